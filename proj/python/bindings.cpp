#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gadam/config.hpp"
#include "gadam/driver.hpp"
#include "gadam/errors.hpp"
#include "gadam/harness.hpp"
#include "gadam/minnorm.hpp"
#include "gadam/optimizer.hpp"
#include "gadam/planner.hpp"
#include "gadam/trace_io.hpp"

namespace py = pybind11;
using namespace gadam;

namespace {

using Vec = std::vector<double>;

Point to_point(const Vec& v) { return Point(v); }

std::optional<Vec> maybe_values(const std::optional<Point>& p) {
  if (!p) return std::nullopt;
  return p->values();
}

// pybind11 holders cannot be pointer-to-const; objectives are never mutated through them.
std::shared_ptr<Objective> held(ObjectivePtr f) { return std::const_pointer_cast<Objective>(std::move(f)); }

AdamParams make_params(double eps, double beta1, double beta2, std::optional<double> alpha) {
  AdamParams p{eps, beta1, beta2, alpha};
  p.validate();
  return p;
}

py::dict state_dict(const AdamState& x) {
  py::dict d;
  d["m"] = x.m.values();
  d["v"] = x.v.point().values();
  d["w"] = x.w.values();
  return d;
}

AdamState make_state(const Vec& m, const Vec& v, const Vec& w) {
  return AdamState(Point(m), NonnegPoint(v), Point(w));
}

std::string trace_csv(const Trace& t) {
  std::ostringstream os;
  write_trace_csv(os, t.rows());
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_gadam, m) {
  m.doc() = "Generalized Adam with certified parameter plans";

  py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_ValueError);
  py::register_exception<OracleError>(m, "OracleError", PyExc_RuntimeError);

  py::class_<Objective, std::shared_ptr<Objective>>(m, "Objective")
      .def_property_readonly("name", &Objective::name)
      .def_property_readonly("dim", &Objective::dim)
      .def("eval", [](const Objective& f, const Vec& w) { return f.eval(to_point(w)); })
      .def("clarke_selection",
           [](const Objective& f, const Vec& w) { return f.clarke_selection(to_point(w)).values(); })
      .def("minimizer", [](const Objective& f) { return maybe_values(f.minimizer()); });

  m.def("sq_l2_scaled", [](std::size_t dim) { return held(sq_l2_scaled(dim)); }, py::arg("dim"));
  m.def(
      "sq_linf", [](std::size_t dim, double tie_tol) { return held(sq_linf(dim, tie_tol)); }, py::arg("dim"),
      py::arg("tie_tol") = 1e-12);
  m.def(
      "objective_from_config",
      [](const std::string& text) { return held(make_objective(parse_config(text))); },
      py::arg("text"), "Objective from `key = value` lines (objective, dim, norm, profile, ...).");

  m.def("compute_D", &compute_D, py::arg("delta"), py::arg("mu"), py::arg("eps"), py::arg("alpha"),
        py::arg("beta1"));

  py::class_<LocalPlan>(m, "LocalPlan")
      .def_readonly("delta", &LocalPlan::delta)
      .def_readonly("mu", &LocalPlan::mu)
      .def_readonly("A", &LocalPlan::A)
      .def_readonly("eps", &LocalPlan::eps)
      .def_readwrite("alpha", &LocalPlan::alpha)
      .def_readonly("alpha_lower", &LocalPlan::alpha_lower)
      .def_readonly("alpha_upper", &LocalPlan::alpha_upper)
      .def_readonly("beta1", &LocalPlan::beta1)
      .def_readonly("beta2", &LocalPlan::beta2)
      .def_readonly("D", &LocalPlan::D)
      .def_readonly("L0", &LocalPlan::L0)
      .def_readonly("L0_term", &LocalPlan::L0_term)
      .def_readonly("L", &LocalPlan::L)
      .def_readonly("K0", &LocalPlan::K0)
      .def_readonly("beta", &LocalPlan::beta)
      .def_readonly("n0", &LocalPlan::n0)
      .def_readonly("K", &LocalPlan::K)
      .def_readonly("r", &LocalPlan::r)
      .def_readonly("eta", &LocalPlan::eta)
      .def("__str__", [](const LocalPlan& p) { return to_key_values(p); });

  m.def(
      "plan_local",
      [](double delta, double mu, std::optional<double> A, double eps, std::optional<double> beta2,
         const std::string& alpha, double R) {
        LocalPlanRequest q;
        q.delta = delta;
        q.mu = mu;
        q.A = A;
        q.eps = eps;
        q.beta2 = beta2;
        q.alpha = AlphaChoice::parse(alpha);
        q.R = R;
        return plan_local(q);
      },
      py::arg("delta"), py::arg("mu"), py::arg("A") = py::none(), py::arg("eps") = 1.0,
      py::arg("beta2") = py::none(), py::arg("alpha") = "upper", py::arg("R") = 1.0);

  py::class_<BasinPlan>(m, "BasinPlan")
      .def_readonly("sigma", &BasinPlan::sigma)
      .def_readonly("eta", &BasinPlan::eta)
      .def_readonly("beta1", &BasinPlan::beta1s)
      .def_readonly("beta2", &BasinPlan::beta2s)
      .def_readonly("eps", &BasinPlan::epss)
      .def_readonly("M", &BasinPlan::M)
      .def_readonly("theta1", &BasinPlan::theta1)
      .def_readonly("theta2", &BasinPlan::theta2)
      .def_readonly("s", &BasinPlan::s)
      .def_readonly("n0_basin", &BasinPlan::n0_basin)
      .def("__str__", [](const BasinPlan& p) { return to_key_values(p); });

  m.def(
      "plan_basin",
      [](double sigma, double eta, double M, std::optional<double> beta1, std::optional<double> eps,
         double beta2, std::optional<double> C_w0) {
        BasinPlanRequest q;
        q.sigma = sigma;
        q.eta = eta;
        q.M = M;
        q.beta1s = beta1;
        q.epss = eps;
        q.beta2s = beta2;
        q.C_w0 = C_w0;
        return plan_basin(q);
      },
      py::arg("sigma"), py::arg("eta"), py::arg("M"), py::arg("beta1") = py::none(),
      py::arg("eps") = py::none(), py::arg("beta2") = 0.5, py::arg("C_w0") = py::none());

  m.def(
      "adam_step",
      [](const Vec& m_, const Vec& v, const Vec& w, const Vec& zeta, std::uint64_t n, double eps,
         double beta1, double beta2, double alpha) {
        const StepReport r =
            adam_step(make_state(m_, v, w), Point(zeta), n, make_params(eps, beta1, beta2, alpha));
        py::dict d = state_dict(r.state_after);
        d["gamma_w"] = r.gamma_part.w.values();
        d["omega_w"] = r.omega_part.values();
        d["alpha"] = r.alpha_used;
        return d;
      },
      py::arg("m"), py::arg("v"), py::arg("w"), py::arg("zeta"), py::arg("n"), py::arg("eps"),
      py::arg("beta1"), py::arg("beta2"), py::arg("alpha"),
      "Bias-corrected Adam step n; returns m, v, w and the Gamma/Omega split of w.");

  m.def(
      "generalized_step",
      [](const Vec& m_, const Vec& v, const Vec& w, const Vec& zeta, double alpha_n, double eps,
         double beta1, double beta2) {
        return state_dict(generalized_step(make_state(m_, v, w), Point(zeta), alpha_n,
                                           make_params(eps, beta1, beta2, std::nullopt)));
      },
      py::arg("m"), py::arg("v"), py::arg("w"), py::arg("zeta"), py::arg("alpha_n"), py::arg("eps"),
      py::arg("beta1"), py::arg("beta2"));

  m.def(
      "min_norm_point",
      [](const std::vector<Vec>& vertices, double tol) {
        std::vector<Point> pts;
        pts.reserve(vertices.size());
        for (const auto& v : vertices) pts.emplace_back(v);
        MinNormOptions o;
        o.tol = tol;
        const MinNormResult r = min_norm_point(HullSpec(std::move(pts)), o);
        return py::make_tuple(r.point.values(), r.coefficients);
      },
      py::arg("vertices"), py::arg("tol") = 1e-10,
      "Minimum-norm point of the convex hull and its barycentric weights.");

  py::class_<TraceRow>(m, "TraceRow")
      .def_readonly("n", &TraceRow::n)
      .def_readonly("C", &TraceRow::C)
      .def_readonly("zeta_norm", &TraceRow::zeta_norm)
      .def_readonly("m_norm", &TraceRow::m_norm)
      .def_readonly("v_norm", &TraceRow::v_norm)
      .def_readonly("err_w", &TraceRow::err_w)
      .def_readonly("triple_err", &TraceRow::triple_err)
      .def_readonly("alpha_n", &TraceRow::alpha_n);

  py::class_<Trace>(m, "Trace")
      .def_property_readonly("rows", &Trace::rows)
      .def_property_readonly("steps", &Trace::steps)
      .def_property_readonly("termination", [](const Trace& t) { return std::string(to_string(t.termination)); })
      .def_readonly("notes", &Trace::notes)
      .def_property_readonly("final_w", [](const Trace& t) { return t.records.back().w.values(); })
      .def("to_csv", &trace_csv);

  m.def(
      "run_local",
      [](const Objective& f, const Vec& w0, const LocalPlan& plan, double tol, std::uint64_t step_cap) {
        LocalRunOptions o;
        o.tol = tol;
        o.step_cap = step_cap;
        return run_local(f, Point(w0), plan, o);
      },
      py::arg("objective"), py::arg("w0"), py::arg("plan"), py::arg("tol") = 1e-10,
      py::arg("step_cap") = 100000);

  py::class_<GlobalResult>(m, "GlobalResult")
      .def_readonly("basin", &GlobalResult::basin)
      .def_readonly("local", &GlobalResult::local)
      .def_readonly("handoff_ok", &GlobalResult::handoff_ok)
      .def_property_readonly("local_plan", [](const GlobalResult& g) { return g.setup.local_plan; })
      .def_property_readonly("basin_plan", [](const GlobalResult& g) { return g.setup.basin_plan; })
      .def_property_readonly("termination",
                             [](const GlobalResult& g) { return std::string(to_string(g.termination())); });

  m.def(
      "run_global",
      [](const Objective& f, const Vec& w0, std::uint64_t seed, std::size_t samples) {
        GlobalConfig c;
        c.seed = seed;
        c.growth_samples = samples;
        c.pair_samples = samples;
        return run_global(f, Point(w0), c);
      },
      py::arg("objective"), py::arg("w0"), py::arg("seed") = 0, py::arg("samples") = 10000,
      "Basin phase with the adaptive step, then certified Adam from the reached point.");

  py::class_<RateFit>(m, "RateFit")
      .def_readonly("rate", &RateFit::rate)
      .def_readonly("points", &RateFit::points)
      .def_readonly("residual", &RateFit::residual)
      .def_readonly("note", &RateFit::note);
  m.def(
      "fit_rate", [](const Trace& t, double tail) { return fit_rate(t, tail); }, py::arg("trace"),
      py::arg("tail_fraction") = 0.5);

  py::class_<CheckReport>(m, "CheckReport")
      .def_readonly("name", &CheckReport::name)
      .def_readonly("passed", &CheckReport::passed)
      .def_readonly("max_ratio", &CheckReport::max_ratio)
      .def_readonly("checked", &CheckReport::checked)
      .def_readonly("violations", &CheckReport::violations)
      .def_readonly("witness", &CheckReport::witness)
      .def("__str__", &CheckReport::to_text);

  m.def("negative_control_plan", &negative_control_plan, py::arg("certified"), py::arg("alpha_factor") = 2.0);
  m.def("check_gamma_contraction", &check_gamma_contraction, py::arg("objective"), py::arg("plan"),
        py::arg("samples"), py::arg("seed"), py::arg("slack") = 1e-9);
  m.def("check_omega_decay", &check_omega_decay, py::arg("objective"), py::arg("plan"), py::arg("samples"),
        py::arg("n_max"), py::arg("seed"), py::arg("slack") = 1e-9);
}
