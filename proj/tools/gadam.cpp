// gadam: plan, run, verify and sweep generalized Adam from the command line.
//
// Exit codes: 0 ok, 1 usage or I/O error, 2 infeasible plan, 3 hypothesis violation,
// 4 step cap, 5 failed verification.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gadam/config.hpp"
#include "gadam/driver.hpp"
#include "gadam/errors.hpp"
#include "gadam/format.hpp"
#include "gadam/harness.hpp"
#include "gadam/planner.hpp"
#include "gadam/trace_io.hpp"

using namespace gadam;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInfeasible = 2;
constexpr int kViolation = 3;
constexpr int kStepCap = 4;
constexpr int kVerifyFailed = 5;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Config keys exposed as flags; "--alpha-scale" sets alpha_scale.
const std::vector<std::string> kConfigKeys = {
    "objective", "dim",   "norm",  "profile",        "profile_c",     "knee",
    "inner",     "outer", "weights", "w0",           "delta",         "mu",
    "sigma",     "M",     "A",     "beta2",          "eps",           "alpha",
    "R",         "region_radius",  "pair_radius",    "samples",       "beta1s",
    "beta1s_fraction",    "epss",  "eps_margin",     "beta2s",        "tol",
    "local_step_cap",     "basin_step_cap_max",      "alpha_scale"};

std::string flag_name(std::string key) {
  for (auto& c : key)
    if (c == '_') c = '-';
  return "--" + key;
}

// Flags shared by every command that builds a RunConfig; flags override the file.
struct ConfigFlags {
  std::string config_path;
  std::string seed;
  std::string out;
  std::map<std::string, std::string> values;
  std::vector<std::string> sets;

  void attach(CLI::App* app, bool with_config_keys = true) {
    app->add_option("--config", config_path, "key = value config file");
    app->add_option("--seed", seed, "sampling seed");
    app->add_option("--out", out, "output CSV path");
    app->add_option("--set", sets, "extra key=value setting (repeatable)");
    if (!with_config_keys) return;
    for (const auto& key : kConfigKeys) app->add_option(flag_name(key), values[key]);
  }

  RunConfig build() const {
    RunConfig c;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw IoError("cannot read config '" + config_path + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      c = parse_config(buf.str(), c);
    }
    for (const auto& [key, value] : values)
      if (!value.empty()) apply_setting(c, key, value);
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
      apply_setting(c, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!seed.empty()) apply_setting(c, "seed", seed);
    if (!out.empty()) c.out = out;
    return c;
  }
};

int exit_code_for(Termination t) {
  switch (t) {
    case Termination::hypothesis_violation: return kViolation;
    case Termination::step_cap: return kStepCap;
    default: return kOk;
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

void write_trace_file(std::ofstream& out, const std::string& path, const Trace& t) {
  write_trace_csv(out, t.rows());
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::string rate_text(const Trace& t) {
  try {
    return format_double(fit_rate(t).rate);
  } catch (const std::invalid_argument&) {
    return "n/a";
  }
}

std::string summary_line(const Trace& t) {
  return "termination = " + std::string(to_string(t.termination)) + ", steps = " + std::to_string(t.steps()) +
         ", rate = " + rate_text(t);
}

void print_notes(const Trace& t) {
  for (const auto& n : t.notes) std::cerr << n << '\n';
}

LocalPlan local_plan_from(const RunConfig& c) {
  if (c.delta && c.mu) {
    LocalPlanRequest req;
    req.delta = *c.delta;
    req.mu = *c.mu;
    req.A = c.A;
    req.eps = c.eps;
    req.beta2 = c.beta2;
    req.alpha = AlphaChoice::parse(c.alpha);
    req.R = c.R;
    return plan_local(req);
  }
  return local_plan_for(c, *make_objective(c));
}

LocalRunOptions local_options(const RunConfig& c) {
  LocalRunOptions o;
  o.tol = c.tol;
  o.step_cap = c.local_step_cap;
  return o;
}

// Plan with alpha scaled by alpha_scale and nothing else touched.
LocalPlan scaled(LocalPlan p, double alpha_scale) {
  p.alpha *= alpha_scale;
  return p;
}

int cmd_plan_local(const RunConfig& c) {
  std::cout << to_key_values(local_plan_from(c));
  return kOk;
}

struct BasinFlags {
  double sigma = 0.0;
  double eta = 0.0;
  std::optional<double> beta1;
  std::optional<double> eps;
  double beta2 = 0.5;
  double M = 0.0;
  std::optional<double> C0;
};

int cmd_plan_basin(const BasinFlags& f) {
  BasinPlanRequest req;
  req.sigma = f.sigma;
  req.eta = f.eta;
  req.beta1s = f.beta1;
  req.epss = f.eps;
  req.beta2s = f.beta2;
  req.M = f.M;
  req.C_w0 = f.C0;
  std::cout << to_key_values(plan_basin(req));
  return kOk;
}

int cmd_run_local(const RunConfig& c) {
  const auto f = make_objective(c);
  const LocalPlan plan = local_plan_for(c, *f);
  const Point w0 = resolve_w0(c, *f, &plan);
  auto out = open_output(c.out);
  const Trace t = run_local(*f, w0, scaled(plan, c.alpha_scale), local_options(c));
  write_trace_file(out, c.out, t);
  print_notes(t);
  std::cout << summary_line(t) << '\n';
  return exit_code_for(t.termination);
}

int cmd_run_basin(const RunConfig& c) {
  const auto f = make_objective(c);
  const Point w0 = resolve_w0(c, *f);
  const GlobalSetup setup = plan_global(*f, w0, to_global_config(c));
  auto out = open_output(c.out);
  const Trace t = run_basin(*f, w0, setup.basin_plan, setup.basin_step_cap);
  write_trace_file(out, c.out, t);
  for (const auto& n : setup.notes) std::cerr << n << '\n';
  print_notes(t);
  std::cout << summary_line(t) << '\n';
  return exit_code_for(t.termination);
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const std::filesystem::path p(path);
  const std::string ext = p.has_extension() ? p.extension().string() : ".csv";
  return (p.parent_path() / (p.stem().string() + suffix + ext)).string();
}

int cmd_run_global(const RunConfig& c) {
  const auto f = make_objective(c);
  const Point w0 = resolve_w0(c, *f);
  const std::string basin_path = with_suffix(c.out, "_basin");
  const std::string local_path = with_suffix(c.out, "_local");
  auto basin_out = open_output(basin_path);
  auto local_out = open_output(local_path);
  const GlobalResult g = run_global(*f, w0, to_global_config(c));
  write_trace_file(basin_out, basin_path, g.basin);
  for (const auto& n : g.setup.notes) std::cerr << n << '\n';
  print_notes(g.basin);
  std::cout << "basin: " << summary_line(g.basin) << '\n';
  if (g.local) {
    write_trace_file(local_out, local_path, *g.local);
    print_notes(*g.local);
    std::cout << "local: " << summary_line(*g.local) << '\n';
  } else {
    write_trace_csv(local_out, {});
    std::cout << "local: not run" << (g.handoff_ok ? "" : " (handoff outside r/K)") << '\n';
  }
  if (!g.handoff_ok) return kViolation;
  return exit_code_for(g.termination());
}

int cmd_verify(const RunConfig& c, bool negative_control) {
  const auto f = make_objective(c);
  const GlobalConfig gc = to_global_config(c);
  const Point w0 = resolve_w0(c, *f);
  const GlobalSetup setup = plan_global(*f, w0, gc);
  const HypothesisEstimate& est = setup.estimate;
  std::cout << "objective = " << f->name() << '\n'
            << "mu_hat = " << format_double(est.mu_hat) << '\n'
            << "delta_hat = " << format_double(est.delta_hat) << '\n'
            << "sigma_hat = " << format_double(est.sigma_hat) << '\n'
            << "M_hat = " << (est.M_hat ? format_double(*est.M_hat) : std::string("n/a")) << '\n'
            << "samples = " << est.sample_count << ", seed = " << est.seed << '\n';

  const LocalPlan& certified = setup.local_plan;
  const LocalPlan plan = negative_control ? negative_control_plan(certified) : certified;
  if (negative_control) {
    std::cout << "negative control: alpha = " << format_double(plan.alpha) << " (certified "
              << format_double(certified.alpha) << "), beta1 = " << format_double(plan.beta1) << '\n';
  }

  std::vector<CheckReport> reports;
  reports.push_back(check_gamma_contraction(*f, plan, c.samples, c.seed + 1));
  reports.push_back(check_omega_decay(*f, plan, c.samples, 100, c.seed + 2));

  RunConfig inside = c;
  inside.w0 = "inside";
  const Trace local = run_local(*f, resolve_w0(inside, *f, &certified), plan, local_options(c));
  reports.push_back(check_local_envelope(local, plan));

  const GlobalResult g = run_global(*f, w0, gc);
  reports.push_back(check_basin_descent(g.basin, g.setup.basin_plan));
  reports.push_back(check_inner_product_bound(g.setup.basin_plan, g.basin));

  bool all = true;
  for (const auto& r : reports) {
    std::cout << r.to_text();
    all = all && r.passed;
  }
  std::cout << "local run: " << summary_line(local) << '\n';
  std::cout << "global run: " << to_string(g.termination()) << ", handoff "
            << (g.handoff_ok ? "inside" : "outside") << " r/K\n";
  all = all && g.handoff_ok;
  std::cout << (all ? "verify: PASS" : "verify: FAIL") << '\n';
  return all ? kOk : kVerifyFailed;
}

int cmd_verify_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read trace '" + path + "'");
  const auto rows = read_trace_csv(in);
  if (rows.empty()) throw std::invalid_argument("trace '" + path + "' has no rows");
  const RateFit fit = fit_rate(rows);
  std::cout << "rate = " << format_double(fit.rate) << '\n'
            << "window = " << fit.window.first << ".." << fit.window.second << '\n'
            << "points = " << fit.points << '\n'
            << "residual = " << format_double(fit.residual) << '\n';
  if (!fit.note.empty()) std::cout << "note = " << fit.note << '\n';
  return kOk;
}

struct SweepFlags {
  std::string param;
  double from = 0.0;
  double to = 0.0;
  std::size_t points = 10;
};

std::string csv_field(std::string s) {
  for (auto& ch : s)
    if (ch == ',') ch = ';';
  return s;
}

struct SweepRow {
  bool feasible = false;
  std::string text;
};

// One row of a sweep: the same plan and local run as `run local`.
SweepRow sweep_row(const RunConfig& base, const SweepFlags& s, std::size_t index, const Objective* oracle) {
  double value = s.from;
  if (s.points > 1) {
    value = index + 1 == s.points
                ? s.to
                : s.from + (s.to - s.from) * static_cast<double>(index) / static_cast<double>(s.points - 1);
  }
  const std::string value_text = format_double(value);
  std::string row = std::to_string(index) + "," + value_text + ",";
  try {
    RunConfig c = base;
    apply_setting(c, s.param, value_text);
    const LocalPlan plan = oracle ? local_plan_for(c, *oracle) : local_plan_from(c);
    row += "1,," + format_double(plan.L0) + "," + format_double(plan.L) + ",";
    if (!oracle) return {true, row + ",,"};
    const Trace t = run_local(*oracle, resolve_w0(c, *oracle, &plan), scaled(plan, c.alpha_scale), local_options(c));
    return {true, row + rate_text(t) + "," + std::to_string(t.steps()) + "," + to_string(t.termination)};
  } catch (const InfeasibleError& e) {
    return {false, row + "0," + csv_field(e.constraint()) + ",,,,,"};
  }
}

int cmd_sweep(const RunConfig& c, const SweepFlags& s) {
  if (s.points == 0) throw std::invalid_argument("--points must be at least 1");
  if (std::find(kConfigKeys.begin(), kConfigKeys.end(), s.param) == kConfigKeys.end()) {
    throw std::invalid_argument("unknown sweep parameter '" + s.param + "'");
  }
  const ObjectivePtr oracle = c.objective.empty() ? nullptr : make_objective(c);
  auto out = open_output(c.out);
  out << "index,value,feasible,constraint,L0,L,rate,steps,termination\n";
  std::size_t feasible = 0;
  for (std::size_t i = 0; i < s.points; ++i) {
    const SweepRow row = sweep_row(c, s, i, oracle.get());
    if (row.feasible) ++feasible;
    out << row.text << '\n';
  }
  out.flush();
  if (!out) throw IoError("write failed for '" + c.out + "'");
  std::cout << "sweep " << s.param << ": " << s.points << " points, " << feasible << " feasible, wrote "
            << c.out << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Adam: plan, run, verify, sweep"};
  app.require_subcommand(1);

  auto* plan = app.add_subcommand("plan", "print certified constants");
  plan->require_subcommand(1);
  ConfigFlags plan_local_flags;
  auto* plan_local_cmd = plan->add_subcommand("local", "local-phase plan");
  plan_local_flags.attach(plan_local_cmd);

  BasinFlags basin_flags;
  auto* plan_basin_cmd = plan->add_subcommand("basin", "basin-phase plan");
  plan_basin_cmd->add_option("--sigma", basin_flags.sigma, "bound on |zeta|")->required();
  plan_basin_cmd->add_option("--eta", basin_flags.eta, "target |zeta|")->required();
  plan_basin_cmd->add_option("--beta1", basin_flags.beta1, "beta1*");
  plan_basin_cmd->add_option("--eps", basin_flags.eps, "eps*");
  plan_basin_cmd->add_option("--beta2", basin_flags.beta2, "beta2*");
  plan_basin_cmd->add_option("--M", basin_flags.M, "descent constant")->required();
  plan_basin_cmd->add_option("--C0", basin_flags.C0, "C(w0) - C(w*), for the step bound");

  auto* run = app.add_subcommand("run", "run the optimizer and write a CSV trace");
  run->require_subcommand(1);
  ConfigFlags run_local_flags, run_basin_flags, run_global_flags;
  auto* run_local_cmd = run->add_subcommand("local", "certified Adam near the minimizer");
  auto* run_basin_cmd = run->add_subcommand("basin", "adaptive-step phase only");
  auto* run_global_cmd = run->add_subcommand("global", "basin phase then local phase");
  run_local_flags.attach(run_local_cmd);
  run_basin_flags.attach(run_basin_cmd);
  run_global_flags.attach(run_global_cmd);

  auto* verify = app.add_subcommand("verify", "estimate constants and audit every inequality");
  ConfigFlags verify_flags;
  verify_flags.attach(verify);
  bool negative_control = false;
  std::string trace_path;
  verify->add_flag("--negative-control", negative_control, "audit a plan with alpha doubled");
  verify->add_option("--trace", trace_path, "fit the rate of an existing trace CSV instead");

  auto* sweep = app.add_subcommand("sweep", "one summary row per grid point");
  ConfigFlags sweep_flags;
  sweep_flags.attach(sweep);
  SweepFlags grid;
  sweep->add_option("--param", grid.param, "config key to vary")->required();
  sweep->add_option("--from", grid.from, "first value")->required();
  sweep->add_option("--to", grid.to, "last value")->required();
  sweep->add_option("--points", grid.points, "grid size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n' << app.help();
    return kUsage;
  }

  try {
    if (*plan_local_cmd) return cmd_plan_local(plan_local_flags.build());
    if (*plan_basin_cmd) return cmd_plan_basin(basin_flags);
    if (*run_local_cmd) return cmd_run_local(run_local_flags.build());
    if (*run_basin_cmd) return cmd_run_basin(run_basin_flags.build());
    if (*run_global_cmd) return cmd_run_global(run_global_flags.build());
    if (*verify) {
      if (!trace_path.empty()) return cmd_verify_trace(trace_path);
      return cmd_verify(verify_flags.build(), negative_control);
    }
    if (*sweep) return cmd_sweep(sweep_flags.build(), grid);
  } catch (const InfeasibleError& e) {
    std::cerr << e.what() << '\n' << "violated constraint: " << e.constraint() << '\n';
    return kInfeasible;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
