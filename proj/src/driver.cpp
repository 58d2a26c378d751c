#include "gadam/driver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gadam/errors.hpp"
#include "gadam/format.hpp"
#include "gadam/optimizer.hpp"

namespace gadam {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kSlack = 1e-9;

TraceRecord make_record(std::uint64_t n, const AdamState& x, double C, const Point& zeta,
                        const std::optional<Point>& w_star, double A) {
  TraceRecord rec{TraceRow{}, x.w, kNaN};
  rec.row.n = n;
  rec.row.C = C;
  rec.row.zeta_norm = euclid_norm(zeta);
  rec.row.m_norm = euclid_norm(x.m);
  rec.row.v_norm = euclid_norm(x.v);
  if (w_star) {
    rec.row.err_w = euclid_norm(x.w - *w_star);
    rec.row.triple_err = triple_norm(offset_from(x, *w_star), A);
  } else {
    rec.row.err_w = kNaN;
    rec.row.triple_err = kNaN;
  }
  rec.row.alpha_n = 0.0;
  return rec;
}

std::string num(double x) { return format_double(x); }

}  // namespace

const char* to_string(Termination t) {
  switch (t) {
    case Termination::critical_point: return "critical_point";
    case Termination::eta_reached: return "eta_reached";
    case Termination::tolerance_reached: return "tolerance_reached";
    case Termination::step_cap: return "step_cap";
    case Termination::hypothesis_violation: return "hypothesis_violation";
  }
  return "unknown";
}

std::vector<TraceRow> Trace::rows() const {
  std::vector<TraceRow> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.row);
  return out;
}

Trace run_basin(const Objective& oracle, const Point& w0, const BasinPlan& plan,
                std::uint64_t step_cap) {
  require_same_dim(w0.size(), oracle.dim(), "run_basin w0");
  const AdamParams params = plan.params();
  params.validate();
  const std::optional<Point> w_star = oracle.minimizer();

  Trace trace;
  trace.plan_used = plan;
  AdamState x = AdamState::at_rest(w0);
  double C = oracle.eval(x.w);
  std::optional<std::string> pending_violation;

  for (std::uint64_t n = 0;; ++n) {
    const Point zeta = oracle.clarke_selection(x.w);
    trace.records.push_back(make_record(n, x, C, zeta, w_star, 1.0));
    TraceRecord& rec = trace.records.back();
    const double zn = rec.row.zeta_norm;

    if (pending_violation) {
      trace.termination = Termination::hypothesis_violation;
      trace.notes.push_back(*pending_violation);
      break;
    }
    if (zn == 0.0) {
      trace.termination = Termination::critical_point;
      break;
    }
    if (zn <= plan.eta) {
      trace.termination = Termination::eta_reached;
      break;
    }
    if (n >= step_cap) {
      trace.termination = Termination::step_cap;
      break;
    }
    if (zn > plan.sigma) {
      trace.termination = Termination::hypothesis_violation;
      trace.notes.push_back("n = " + std::to_string(n) + ": |zeta| = " + num(zn) +
                            " exceeds sigma = " + num(plan.sigma));
      break;
    }

    const AdamState moved = generalized_step(x, zeta, 0.0, params);
    const AdaptiveAlpha aa = adaptive_alpha(zeta, moved.m, moved.v, plan.epss, plan.M);
    rec.inner = aa.inner;
    if (aa.degenerate || !(aa.inner > 0.0)) {
      trace.termination = Termination::hypothesis_violation;
      trace.notes.push_back("n = " + std::to_string(n) + ": <zeta, d> = " + num(aa.inner) +
                            " <= 0, step not taken");
      break;
    }
    rec.row.alpha_n = aa.alpha;
    AdamState next = generalized_step(x, zeta, aa.alpha, params);
    const double C_next = oracle.eval(next.w);
    if (C_next - C > -plan.s + kSlack) {
      pending_violation = "n = " + std::to_string(n) + ": C decreased by " + num(C - C_next) +
                          " < s = " + num(plan.s);
    }
    x = std::move(next);
    C = C_next;
  }
  return trace;
}

Trace run_local(const Objective& oracle, const Point& w0, const LocalPlan& plan,
                const LocalRunOptions& options) {
  require_same_dim(w0.size(), oracle.dim(), "run_local w0");
  const AdamParams params = plan.params();
  params.validate();
  const std::optional<Point> w_star = oracle.minimizer();

  Trace trace;
  trace.plan_used = plan;
  AdamState x = AdamState::at_rest(w0);
  double initial = 0.0;

  for (std::uint64_t n = 0;; ++n) {
    const Point zeta = oracle.clarke_selection(x.w);
    trace.records.push_back(make_record(n, x, oracle.eval(x.w), zeta, w_star, plan.A));
    TraceRecord& rec = trace.records.back();
    const double err = w_star ? rec.row.err_w : rec.row.zeta_norm;
    const double guard = w_star ? rec.row.triple_err : rec.row.zeta_norm;

    if (n == 0) {
      initial = guard;
      const double bound = plan.r / plan.K;
      if (w_star && initial > bound) {
        trace.notes.push_back("warning: |||x0 - x*||| = " + num(initial) + " exceeds r/K = " +
                              num(bound));
      }
    }
    if (err <= options.tol) {
      trace.termination = Termination::tolerance_reached;
      break;
    }
    if (n >= options.step_cap) {
      trace.termination = Termination::step_cap;
      break;
    }
    if (guard > options.divergence_factor * initial) {
      trace.termination = Termination::hypothesis_violation;
      trace.notes.push_back("n = " + std::to_string(n) + ": error " + num(guard) + " exceeds " +
                            num(options.divergence_factor) + " x initial " + num(initial));
      break;
    }
    StepReport step = adam_step(x, zeta, n, params);
    rec.row.alpha_n = step.alpha_used;
    x = std::move(step.state_after);
  }
  return trace;
}

GlobalSetup plan_global(const Objective& oracle, const Point& w0, const GlobalConfig& cfg) {
  require_same_dim(w0.size(), oracle.dim(), "run_global w0");
  const std::optional<Point> w_star = oracle.minimizer();
  if (!w_star) throw std::invalid_argument("run_global: the objective declares no minimizer");

  GlobalSetup g{*w_star, {}, 0, 0, 0, 0, 0, {}, 0, 0, {}, 0, {}};
  const double dist0 = euclid_norm(w0 - g.w_star);
  const double region = cfg.region_radius
                            ? *cfg.region_radius
                            : std::max(cfg.R, std::sqrt(static_cast<double>(w0.size())) * dist0);

  g.estimate = estimate_growth(oracle, g.w_star, cfg.R, cfg.growth_samples, cfg.seed);
  if ((!cfg.delta || !cfg.mu) && !g.estimate.hypothesis_ok) {
    throw InfeasibleError("delta > 0", g.estimate.note);
  }
  g.delta = cfg.delta ? *cfg.delta : g.estimate.delta_hat * cfg.delta_safety;
  g.mu = cfg.mu ? *cfg.mu : g.estimate.mu_hat * cfg.mu_safety;

  if (cfg.sigma) {
    g.sigma = *cfg.sigma;
  } else {
    const HypothesisEstimate wide =
        estimate_growth(oracle, g.w_star, region, cfg.growth_samples, cfg.seed + 1);
    const double at_w0 = euclid_norm(oracle.clarke_selection(w0));
    g.sigma = std::max(wide.sigma_hat, at_w0) * cfg.sigma_safety;
    g.estimate.sigma_hat = std::max(wide.sigma_hat, at_w0);
  }

  g.R0 = cfg.pair_radius ? *cfg.pair_radius : region;
  if (cfg.M) {
    g.M = *cfg.M;
  } else {
    DescentSampling ds;
    ds.region_radius = region;
    ds.pair_radius = g.R0;
    ds.pair_samples = cfg.pair_samples;
    ds.seed = cfg.seed + 2;
    const double M_hat = estimate_descent_constant(oracle, g.w_star, ds);
    g.estimate.M_hat = M_hat;
    g.M = M_hat * cfg.M_safety;
    if (!(g.sigma / g.M < g.R0)) {
      const double raised = 1.01 * g.sigma / g.R0;
      g.notes.push_back("M raised from " + num(g.M) + " to " + num(raised) + " so sigma/M < R0");
      g.M = raised;
    }
  }

  LocalPlanRequest lr;
  lr.delta = g.delta;
  lr.mu = g.mu;
  lr.A = cfg.A;
  lr.eps = cfg.eps;
  lr.beta2 = cfg.beta2;
  lr.alpha = cfg.alpha;
  lr.R = cfg.R;
  g.local_plan = plan_local(lr);

  g.r = std::min({1.0, cfg.R, 1.0 / g.mu, g.local_plan.r});
  g.eta = g.delta * g.r / (g.local_plan.A * g.local_plan.K);

  BasinPlanRequest br;
  br.sigma = g.sigma;
  br.eta = g.eta;
  br.beta1s = cfg.beta1s;
  br.beta1s_fraction = cfg.beta1s_fraction;
  br.epss = cfg.epss;
  br.eps_margin = cfg.eps_margin;
  br.beta2s = cfg.beta2s;
  br.M = g.M;
  br.C_w0 = std::max(0.0, oracle.eval(w0) - oracle.eval(g.w_star));
  g.basin_plan = plan_basin(br);

  const double cap = std::min(10.0 * *g.basin_plan.n0_basin,
                              static_cast<double>(cfg.basin_step_cap_max));
  g.basin_step_cap = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(cap));
  return g;
}

Termination GlobalResult::termination() const {
  if (!handoff_ok) return Termination::hypothesis_violation;
  if (local) return local->termination;
  return basin.termination;
}

GlobalResult run_global(const Objective& oracle, const Point& w0, const GlobalConfig& cfg) {
  GlobalResult out{plan_global(oracle, w0, cfg), {}, std::nullopt, 0.0, 0.0, true};
  const GlobalSetup& g = out.setup;
  out.basin = run_basin(oracle, w0, g.basin_plan, g.basin_step_cap);
  if (out.basin.termination != Termination::eta_reached) return out;

  const Point& w_handoff = out.basin.records.back().w;
  const double dist = euclid_norm(w_handoff - g.w_star);
  const double zn = out.basin.records.back().row.zeta_norm;
  out.handoff_triple_err = g.local_plan.A * dist;
  out.handoff_bound = g.r / g.local_plan.K;
  if (!(g.delta * dist <= zn * (1.0 + 1e-12)) ||
      !(out.handoff_triple_err <= out.handoff_bound * (1.0 + 1e-12))) {
    out.handoff_ok = false;
    out.basin.notes.push_back("handoff: delta |w - w*| = " + num(g.delta * dist) +
                              ", |zeta| = " + num(zn) + ", |||x - x*||| = " +
                              num(out.handoff_triple_err) + ", r/K = " + num(out.handoff_bound));
    return out;
  }

  LocalRunOptions lo;
  lo.tol = cfg.tol;
  lo.step_cap = cfg.local_step_cap;
  out.local = run_local(oracle, w_handoff, g.local_plan, lo);
  return out;
}

}  // namespace gadam
