#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gadam/core.hpp"
#include "gadam/optimizer.hpp"

namespace gadam {

/// Where alpha sits inside its certified interval (lower, upper]:
/// alpha = lower + fraction (upper - lower). fraction = 1 is the upper endpoint.
struct AlphaChoice {
  double fraction = 1.0;

  static AlphaChoice upper() { return {1.0}; }
  static AlphaChoice mid() { return {0.5}; }
  static AlphaChoice lower_plus() { return {0.01}; }
  /// "upper", "mid", "lower+" or a number in (0, 1].
  static AlphaChoice parse(const std::string& text);
};

struct LocalPlanRequest {
  double delta = 0.0;
  double mu = 0.0;
  /// Weight of the w-block in the triple norm; default 1 if mu < 1 else mu (1 + 1e-3).
  std::optional<double> A;
  double eps = 1.0;
  /// Default min(0.1, largest value keeping the v-term of L0 at or below the w-term).
  std::optional<double> beta2;
  AlphaChoice alpha = AlphaChoice::upper();
  /// Radius of the ball on which the growth hypotheses hold.
  double R = 1.0;
  std::uint64_t n0_cap = 1000000;
};

/// Certified local-phase parameters and the constants of the exponential envelope
/// |||x_n - x*||| <= K L^(n - n0) |||x_0 - x*||| for n >= n0.
struct LocalPlan {
  double delta = 0.0;
  double mu = 0.0;
  double A = 1.0;
  double eps = 1.0;
  double alpha = 0.0;
  double alpha_lower = 0.0;
  double alpha_upper = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double D = 0.0;
  /// The three candidates for L0 (m-, v- and w-block contraction factors).
  double L0_m = 0.0;
  double L0_v = 0.0;
  double L0_w = 0.0;
  double L0 = 0.0;
  /// "m", "v" or "w": which block attains L0.
  std::string L0_term;
  double L = 0.0;
  double K1 = 0.0;
  double K2 = 0.0;
  double K0 = 0.0;
  double beta = 0.0;
  std::uint64_t n0 = 0;
  double K = 1.0;
  double r_gamma = 0.0;
  double R = 1.0;
  double r = 0.0;
  double eta = 0.0;

  AdamParams params() const;
};

/// Basin-phase parameters: run generalized Adam with the adaptive step until
/// |zeta| <= eta, losing at least s of objective value per step.
struct BasinPlan {
  double sigma = 0.0;
  double eta = 0.0;
  double beta1s = 0.0;
  double beta2s = 0.0;
  double epss = 0.0;
  double M = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double s = 0.0;
  /// floor(C(w0) / s), once C(w0) is known.
  std::optional<double> n0_basin;

  AdamParams params() const;
};

struct BasinPlanRequest {
  double sigma = 0.0;
  double eta = 0.0;
  /// Explicit beta1* or, if empty, beta1s_fraction * eta / (eta + sigma).
  std::optional<double> beta1s;
  double beta1s_fraction = 0.5;
  /// Explicit eps* or, if empty, sqrt(eps*) = eps_margin * sigma / theta1.
  std::optional<double> epss;
  double eps_margin = 2.0;
  double beta2s = 0.5;
  double M = 0.0;
  std::optional<double> C_w0;
};

/// (1 - 9 alpha delta (1 - b1) / (8 sqrt eps) + alpha^2 (1 - b1)^2 mu^2 / eps)^(1/2).
double compute_D(double delta, double mu, double eps, double alpha, double beta1);

/// Throws InfeasibleError naming the violated constraint.
LocalPlan plan_local(const LocalPlanRequest& request);

/// All LocalPlan constants for explicit (alpha, beta1, beta2) with no feasibility
/// checks; used for sweeps and negative controls.
LocalPlan evaluate_local_constants(double delta, double mu, double A, double eps, double alpha,
                                   double beta1, double beta2, double R = 1.0,
                                   std::uint64_t n0_cap = 1000000);

BasinPlan plan_basin(const BasinPlanRequest& request);

/// floor(C(w0) / s).
double basin_step_bound(const BasinPlan& plan, double C_w0);

/// s written through theta1, theta2 before simplification; agrees with plan.s.
double descent_quantum_unsimplified(const BasinPlan& plan);

/// Lower bound on <zeta_n, m_{n+1} / sqrt(v_{n+1} + eps)> from |zeta_n| and a bound
/// `sigma_bound` on every |zeta_i|, i <= n, for a run started at m = v = 0.
double inner_product_lower_bound(double zeta_norm, double sigma_bound, std::uint64_t n,
                                 double beta1, double beta2, double eps);

/// Left side of the theta bound: the bracket of inner_product_lower_bound with eta
/// in place of |zeta_n|.
double theta_bound_lhs(const BasinPlan& plan, std::uint64_t n);

/// (b1 - b1^(n+1)) theta1 theta2 / (sqrt(eps) (sigma + sqrt(eps))).
double theta_bound_rhs(const BasinPlan& plan, std::uint64_t n);

struct AdaptiveAlpha {
  double alpha = 0.0;
  double inner = 0.0;
  double direction_sq_norm = 0.0;
  /// m_next / sqrt(v_next + eps) is the zero vector; no step is defined.
  bool degenerate = false;
};

/// alpha_n = <zeta, d> / (M |d|^2) with d = m_next / sqrt(v_next + eps).
AdaptiveAlpha adaptive_alpha(const Point& zeta, const Point& m_next, const NonnegPoint& v_next,
                             double eps, double M);

/// `key = value` lines, full precision.
std::string to_key_values(const LocalPlan& plan);
std::string to_key_values(const BasinPlan& plan);

}  // namespace gadam
