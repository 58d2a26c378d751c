#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gadam/core.hpp"

namespace gadam {

/// A locally Lipschitz objective C: R^N -> R together with its generalized-gradient
/// selection zeta_w, the point of the Clarke generalized gradient nearest the origin.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dim() const = 0;
  virtual double eval(const Point& w) const = 0;
  /// Equals the gradient wherever C is differentiable.
  virtual Point clarke_selection(const Point& w) const = 0;
  /// A known global minimizer with zero selection, when the objective declares one.
  virtual std::optional<Point> minimizer() const { return std::nullopt; }
};

using ObjectivePtr = std::shared_ptr<const Objective>;

/// |w|_2^2 / N.
ObjectivePtr sq_l2_scaled(std::size_t dim);

/// |w|_inf^2. Coordinates within tie_tol * |w|_inf of the maximum count as tied.
ObjectivePtr sq_linf(std::size_t dim, double tie_tol = 1e-12);

enum class NormKind { euclid, linf, scaled_euclid };

const char* to_string(NormKind kind);
NormKind parse_norm_kind(const std::string& name);

struct OneSidedDerivative {
  double left;
  double right;
};

/// Scalar profile phi: R+ -> R+ with delta' r <= phi'(r) <= mu' r wherever phi' exists.
struct ScalarProfile {
  std::string name;
  std::function<double(double)> value;
  /// One-sided derivatives at r; nullopt where neither exists.
  std::function<std::optional<OneSidedDerivative>(double)> derivative;
  double delta_prime = 0.0;
  double mu_prime = 0.0;
};

/// phi(r) = c r^2.
ScalarProfile quadratic_profile(double c = 1.0);

/// phi(r) = inner r^2 below the knee and outer r^2 + (inner - outer) knee^2 above it;
/// continuous with a derivative jump at the knee.
ScalarProfile kinked_quadratic_profile(double knee, double inner, double outer);

/// C(w) = phi(|w|*) for one of the supported norms.
struct PhiNormObjective {
  ScalarProfile phi;
  NormKind norm = NormKind::euclid;
  std::size_t dim = 1;
  /// Positive per-coordinate weights for NormKind::scaled_euclid: |w| = sqrt(sum s_i w_i^2).
  std::vector<double> weights;
  double tie_tol = 1e-12;
};

/// Validates the profile bounds by sampling radii; throws std::invalid_argument on violation.
ObjectivePtr phi_norm_objective(PhiNormObjective spec);

/// Sampled estimates of the growth constants mu, delta and the Lipschitz bound sigma
/// over the ball B(w*, radius), plus the descent constant M once estimated.
struct HypothesisEstimate {
  double mu_hat = 0.0;
  double delta_hat = 0.0;
  double sigma_hat = 0.0;
  std::optional<double> M_hat;
  double radius = 0.0;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
  /// False when delta_hat <= 0: the objective is outside the certified class on the ball.
  bool hypothesis_ok = false;
  std::string note;
};

/// Uniform sample in B(center, radius) with |w - center| >= min_radius.
Point uniform_in_ball(std::mt19937_64& rng, const Point& center, double radius,
                      double min_radius = 0.0);

/// mu_hat = max |zeta_w| / |w - w*|, delta_hat = min <zeta_w, w - w*> / |w - w*|^2 over
/// samples uniform in B(w*, R) minus B(w*, 1e-8 R).
HypothesisEstimate estimate_growth(const Objective& oracle, const Point& w_star, double radius,
                                   std::size_t samples = 10000, std::uint64_t seed = 0);

/// Largest relative amount by which fresh samples exceed the recorded mu_hat or undercut
/// delta_hat (0 when the estimate holds on every fresh sample).
double recheck_growth(const Objective& oracle, const HypothesisEstimate& estimate,
                      const Point& w_star, std::size_t samples, std::uint64_t seed);

struct DescentSampling {
  double region_radius = 1.0;
  /// R0: pairs satisfy |w - w'| < pair_radius.
  double pair_radius = 1.0;
  std::size_t pair_samples = 10000;
  std::uint64_t seed = 0;
  double floor = 1e-6;
};

/// M_hat = max over sampled pairs of 2 (C(w') - C(w) - <zeta_w, w' - w>) / |w' - w|^2,
/// floored at `floor`. Pairs closer than 1e-3 R0 are skipped to keep cancellation out
/// of the quotient.
double estimate_descent_constant(const Objective& oracle, const Point& center,
                                 const DescentSampling& sampling);

}  // namespace gadam
