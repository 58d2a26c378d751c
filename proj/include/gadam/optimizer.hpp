#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "gadam/core.hpp"

namespace gadam {

/// Hyperparameters. `alpha` is the fixed step of bias-corrected Adam; leave it empty
/// for the generalized recursion, where the caller supplies alpha_n each step.
struct AdamParams {
  double eps = 1.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  std::optional<double> alpha;

  /// Throws std::invalid_argument unless eps > 0, beta1, beta2 in [0, 1), alpha > 0.
  void validate() const;
  double require_alpha() const;
};

/// One step of the iteration x_{n+1} = Theta(n, x_n) = Gamma(x_n) + Omega(n, x_n).
struct StepReport {
  AdamState state_after;
  Point zeta;
  double alpha_used;
  AdamState gamma_part;
  /// Third slot of Omega(n, x); the first two slots are zero.
  Point omega_part;
};

/// m' = b1 m + (1 - b1) zeta, v' = b2 v + (1 - b2) zeta^2, w' = w - alpha_n m' / sqrt(v' + eps).
AdamState generalized_step(const AdamState& x, const Point& zeta, double alpha_n,
                           const AdamParams& p);

/// sqrt(1 - b2^(n+1)) / (1 - b1^(n+1)).
double bias_factor(std::uint64_t n, const AdamParams& p);

/// Bias-corrected Adam. state_after.w is computed as gamma_part.w + omega_part.
StepReport adam_step(const AdamState& x, const Point& zeta, std::uint64_t n, const AdamParams& p);

/// The autonomous map Gamma: the Adam update with fixed alpha and no bias correction.
AdamState gamma_map(const AdamState& x, const Point& zeta, const AdamParams& p);

/// w-slot of the non-autonomous correction Omega(n, x).
Point omega_map(std::uint64_t n, const AdamState& x, const Point& zeta, const AdamParams& p);

/// m_{n+1}, v_{n+1} from the explicit geometric sums over zeta_0..zeta_n.
std::pair<Point, NonnegPoint> moments_closed_form(std::span<const Point> zeta_history,
                                                  const Point& m0, const NonnegPoint& v0,
                                                  const AdamParams& p);

}  // namespace gadam
