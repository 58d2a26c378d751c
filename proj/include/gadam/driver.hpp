#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gadam/core.hpp"
#include "gadam/objectives.hpp"
#include "gadam/planner.hpp"

namespace gadam {

enum class Termination { critical_point, eta_reached, tolerance_reached, step_cap, hypothesis_violation };

const char* to_string(Termination t);

/// The numeric columns of one iteration, as written to CSV.
struct TraceRow {
  std::uint64_t n = 0;
  double C = 0.0;
  double zeta_norm = 0.0;
  double m_norm = 0.0;
  double v_norm = 0.0;
  /// |w - w*| and |||x - x*|||; NaN when the minimizer is unknown.
  double err_w = 0.0;
  double triple_err = 0.0;
  /// Step size used to leave this iterate; 0 on the last row.
  double alpha_n = 0.0;

  bool operator==(const TraceRow&) const = default;
};

struct TraceRecord {
  TraceRow row;
  Point w;
  /// <zeta_n, m_{n+1} / sqrt(v_{n+1} + eps)> for basin steps; NaN elsewhere.
  double inner = 0.0;
};

using PlanUsed = std::variant<std::monostate, LocalPlan, BasinPlan>;

struct Trace {
  std::vector<TraceRecord> records;
  PlanUsed plan_used;
  Termination termination = Termination::step_cap;
  std::vector<std::string> notes;

  std::vector<TraceRow> rows() const;
  std::uint64_t steps() const { return records.empty() ? 0 : records.size() - 1; }
};

/// Generalized Adam from (0, 0, w0) with the adaptive step, until |zeta| <= eta.
Trace run_basin(const Objective& oracle, const Point& w0, const BasinPlan& plan,
                std::uint64_t step_cap);

struct LocalRunOptions {
  /// On |w - w*| when the minimizer is known, else on |zeta|.
  double tol = 1e-10;
  std::uint64_t step_cap = 100000;
  double divergence_factor = 1e3;
};

/// Bias-corrected Adam from (0, 0, w0) with the plan's alpha, beta1, beta2, eps.
Trace run_local(const Objective& oracle, const Point& w0, const LocalPlan& plan,
                const LocalRunOptions& options = {});

struct GlobalConfig {
  /// Overrides; empty means estimate by sampling.
  std::optional<double> delta;
  std::optional<double> mu;
  std::optional<double> sigma;
  std::optional<double> M;
  std::optional<double> A;
  std::optional<double> beta2;
  double eps = 1.0;
  AlphaChoice alpha = AlphaChoice::upper();
  /// Radius of the ball around w* on which delta and mu are estimated.
  double R = 1.0;
  /// Region for sigma and M; default sqrt(N) |w0 - w*|, at least R.
  std::optional<double> region_radius;
  /// R0 of the descent condition; default the region radius.
  std::optional<double> pair_radius;
  std::size_t growth_samples = 10000;
  std::size_t pair_samples = 10000;
  std::uint64_t seed = 0;
  /// Applied to sampled estimates only.
  double delta_safety = 0.95;
  double mu_safety = 1.05;
  double sigma_safety = 1.1;
  double M_safety = 1.25;
  std::optional<double> beta1s;
  double beta1s_fraction = 0.5;
  std::optional<double> epss;
  double eps_margin = 2.0;
  double beta2s = 0.5;
  double tol = 1e-10;
  std::uint64_t local_step_cap = 100000;
  /// Basin cap: min(10 floor(C(w0)/s), basin_step_cap_max), at least 1.
  std::uint64_t basin_step_cap_max = 1000000;
};

/// Constants shared by both phases of a global run.
struct GlobalSetup {
  Point w_star;
  HypothesisEstimate estimate;
  double delta = 0.0;
  double mu = 0.0;
  double sigma = 0.0;
  double M = 0.0;
  double R0 = 0.0;
  LocalPlan local_plan;
  /// min(1, R, 1/mu, local_plan.r) and delta r / (A K).
  double r = 0.0;
  double eta = 0.0;
  BasinPlan basin_plan;
  std::uint64_t basin_step_cap = 0;
  std::vector<std::string> notes;
};

/// Estimates or takes the constants, builds both plans; throws InfeasibleError.
GlobalSetup plan_global(const Objective& oracle, const Point& w0, const GlobalConfig& config);

struct GlobalResult {
  GlobalSetup setup;
  Trace basin;
  std::optional<Trace> local;
  /// |||x - x*||| at the restart and the r/K it must not exceed.
  double handoff_triple_err = 0.0;
  double handoff_bound = 0.0;
  bool handoff_ok = true;

  /// Termination of the last phase that ran.
  Termination termination() const;
};

/// Basin phase, then Adam restarted at rest from the reached point.
GlobalResult run_global(const Objective& oracle, const Point& w0, const GlobalConfig& config);

}  // namespace gadam
