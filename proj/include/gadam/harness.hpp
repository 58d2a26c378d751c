#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gadam/driver.hpp"
#include "gadam/objectives.hpp"
#include "gadam/planner.hpp"

namespace gadam {

/// Outcome of one inequality audit. `max_ratio` is the largest observed left/right
/// quotient (or the largest excess for difference checks).
struct CheckReport {
  std::string name;
  bool passed = true;
  double bound = 0.0;
  double max_ratio = 0.0;
  std::size_t checked = 0;
  std::size_t violations = 0;
  /// First violating sample or step.
  std::optional<std::string> witness;
  std::optional<std::uint64_t> failing_step;
  std::vector<std::string> notes;

  std::string to_text() const;
};

/// Plan with alpha scaled by `alpha_factor` and beta1 recomputed from it, while L0, K0,
/// beta, r and A stay those of `certified`: the claims a negative control is held to.
LocalPlan negative_control_plan(const LocalPlan& certified, double alpha_factor = 2.0);

/// |||Gamma(x) - x*||| <= L0 |||x - x*||| for x sampled in B_inf(x*, r) with v clamped to >= 0.
CheckReport check_gamma_contraction(const Objective& oracle, const LocalPlan& plan,
                                    std::size_t samples, std::uint64_t seed, double slack = 1e-9);

/// |Omega(n, x)|_inf <= K0 beta^n |x - x*|_inf for n = 0..n_max.
CheckReport check_omega_decay(const Objective& oracle, const LocalPlan& plan, std::size_t samples,
                              std::uint64_t n_max, std::uint64_t seed, double slack = 1e-9);

/// C(w_{n+1}) - C(w_n) <= -s on every step leaving an iterate with |zeta| > eta.
CheckReport check_basin_descent(const Trace& trace, const BasinPlan& plan, double slack = 1e-9);

/// Recorded <zeta_n, d_n> against the lower bound with sigma_n = max_{i<=n} |zeta_i|.
CheckReport check_inner_product_bound(const BasinPlan& plan, const Trace& trace,
                                      double slack = 1e-9);

/// |||x_n - x*||| <= K L^(n - n0) |||x_0 - x*||| for n >= n0.
CheckReport check_local_envelope(const Trace& trace, const LocalPlan& plan, double slack = 1e-9);

enum class RateColumn { triple_err, err_w };

struct RateFit {
  double rate = 0.0;
  double intercept = 0.0;
  std::pair<std::uint64_t, std::uint64_t> window{0, 0};
  double residual = 0.0;
  std::size_t points = 0;
  std::string note;
};

/// Least squares on (n, log err) over the last `tail_fraction` of the positive prefix;
/// rate = exp(slope). Throws std::invalid_argument with fewer than two usable points.
RateFit fit_rate(std::span<const TraceRow> rows, double tail_fraction = 0.5,
                 RateColumn column = RateColumn::triple_err);
RateFit fit_rate(const Trace& trace, double tail_fraction = 0.5,
                 RateColumn column = RateColumn::triple_err);

}  // namespace gadam
