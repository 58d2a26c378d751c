#include "gadam/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gadam/errors.hpp"
#include "gadam/format.hpp"

namespace gadam {

namespace {

std::string num(double x) { return format_double(x); }

}  // namespace

AlphaChoice AlphaChoice::parse(const std::string& text) {
  if (text == "upper") return upper();
  if (text == "mid") return mid();
  if (text == "lower+" || text == "lower") return lower_plus();
  return AlphaChoice{parse_double(text)};
}

AdamParams LocalPlan::params() const { return AdamParams{eps, beta1, beta2, alpha}; }

AdamParams BasinPlan::params() const { return AdamParams{epss, beta1s, beta2s, std::nullopt}; }

double compute_D(double delta, double mu, double eps, double alpha, double beta1) {
  const double c = alpha * (1.0 - beta1);
  const double radicand =
      1.0 - 9.0 * c * delta / (8.0 * std::sqrt(eps)) + c * c * mu * mu / eps;
  if (!(radicand > 0.0)) {
    throw InfeasibleError("D radicand > 0", "radicand = " + num(radicand));
  }
  return std::sqrt(radicand);
}

LocalPlan evaluate_local_constants(double delta, double mu, double A, double eps, double alpha,
                                   double beta1, double beta2, double R, std::uint64_t n0_cap) {
  LocalPlan p;
  p.delta = delta;
  p.mu = mu;
  p.A = A;
  p.eps = eps;
  p.alpha = alpha;
  p.alpha_lower = delta * std::sqrt(eps) / (2.0 * mu * mu);
  p.alpha_upper = p.alpha_lower * (1.0 + delta / (4.0 * A));
  p.beta1 = beta1;
  p.beta2 = beta2;
  p.R = R;
  p.D = compute_D(delta, mu, eps, alpha, beta1);

  const double ratio = mu / A;
  p.L0_m = beta1 + ratio * (1.0 - beta1);
  p.L0_v = beta2 + ratio * ratio * (1.0 - beta2);
  p.L0_w = A * alpha * beta1 / std::sqrt(eps) + p.D;
  p.L0 = p.L0_m;
  p.L0_term = "m";
  if (p.L0_v > p.L0) {
    p.L0 = p.L0_v;
    p.L0_term = "v";
  }
  if (p.L0_w > p.L0) {
    p.L0 = p.L0_w;
    p.L0_term = "w";
  }
  p.L = (p.L0 + 1.0) / 2.0;

  p.K1 = alpha / std::sqrt(eps) * (beta1 + mu * (1.0 - beta1));
  p.K2 = 1.0 / ((1.0 - beta1) * ((1.0 - beta1) + std::sqrt(1.0 - beta2)));
  p.K0 = 2.0 * p.K1 * p.K2;
  p.beta = std::max(beta1, beta2);

  // Omega is bounded by A K0 beta^n in the triple norm.
  const double omega_coeff = A * p.K0;
  p.n0 = n0_cap;
  p.K = std::numeric_limits<double>::infinity();
  if (p.L0 < 1.0) {
    bool found = false;
    double power = 1.0;
    for (std::uint64_t n = 0; n <= n0_cap; ++n) {
      if (p.L0 + omega_coeff * power < p.L) {
        p.n0 = n;
        found = true;
        break;
      }
      power *= p.beta;
    }
    if (found) {
      double K = 1.0;
      double prod = 1.0;
      power = 1.0;
      for (std::uint64_t i = 0; i < p.n0; ++i) {
        prod *= p.L0 + omega_coeff * power;
        K = std::max(K, prod);
        power *= p.beta;
      }
      p.K = K;
    }
  }

  const double widen = 1.0 + delta / (2.0 * mu + delta);
  p.r_gamma = eps / (beta2 + (1.0 - beta2) * mu * mu) * (widen * widen - 1.0);
  p.r = std::min({p.r_gamma, R, 1.0, 1.0 / A});
  p.eta = delta * p.r / (A * p.K);
  return p;
}

LocalPlan plan_local(const LocalPlanRequest& req) {
  if (!(req.delta > 0.0 && req.delta <= req.mu)) {
    throw InfeasibleError("0 < delta <= mu", "delta = " + num(req.delta) + ", mu = " + num(req.mu));
  }
  if (!(req.eps > 0.0)) throw InfeasibleError("eps > 0", "eps = " + num(req.eps));
  if (!(req.R > 0.0)) throw InfeasibleError("R > 0", "R = " + num(req.R));

  const double A = req.A ? *req.A : (req.mu < 1.0 ? 1.0 : req.mu * (1.0 + 1e-3));
  if (!(A >= 1.0)) throw InfeasibleError("A >= 1", "A = " + num(A));
  if (!(A > req.mu)) throw InfeasibleError("A > mu", "A = " + num(A) + ", mu = " + num(req.mu));

  const double frac = req.alpha.fraction;
  if (!(frac > 0.0 && frac <= 1.0)) {
    throw InfeasibleError("delta sqrt(eps)/(2 mu^2) < alpha <= delta sqrt(eps)/(2 mu^2) (1 + delta/(4A))",
                          "alpha fraction = " + num(frac));
  }
  const double lower = req.delta * std::sqrt(req.eps) / (2.0 * req.mu * req.mu);
  const double upper = lower * (1.0 + req.delta / (4.0 * A));
  const double alpha = frac == 1.0 ? upper : lower + frac * (upper - lower);
  const double beta1 = 1.0 - req.delta * std::sqrt(req.eps) / (2.0 * alpha * req.mu * req.mu);

  double beta2 = 0.1;
  if (req.beta2) {
    beta2 = *req.beta2;
    if (!(beta2 > 0.0 && beta2 < 1.0)) throw InfeasibleError("0 < beta2 < 1", "beta2 = " + num(beta2));
  } else {
    const double D = compute_D(req.delta, req.mu, req.eps, alpha, beta1);
    const double w_term = A * alpha * beta1 / std::sqrt(req.eps) + D;
    const double q = (req.mu / A) * (req.mu / A);
    const double bound = (w_term - q) / (1.0 - q);
    if (bound > 0.0) beta2 = std::min(0.1, bound);
  }

  LocalPlan plan = evaluate_local_constants(req.delta, req.mu, A, req.eps, alpha, beta1, beta2,
                                            req.R, req.n0_cap);
  if (!(plan.L0 < 1.0)) {
    throw InfeasibleError("L0 < 1", "max term '" + plan.L0_term + "' = " + num(plan.L0));
  }
  if (!std::isfinite(plan.K)) {
    throw InfeasibleError("L0 + K0 beta^n0 < L", "no n0 <= " + std::to_string(req.n0_cap));
  }
  return plan;
}

BasinPlan plan_basin(const BasinPlanRequest& req) {
  if (!(req.sigma > 0.0)) throw InfeasibleError("sigma > 0", "sigma = " + num(req.sigma));
  if (!(req.eta > 0.0 && req.eta < req.sigma)) {
    throw InfeasibleError("0 < eta < sigma", "eta = " + num(req.eta) + ", sigma = " + num(req.sigma));
  }
  if (!(req.M > 0.0)) throw InfeasibleError("M > 0", "M = " + num(req.M));
  if (!(req.beta2s > 0.0 && req.beta2s < 1.0)) {
    throw InfeasibleError("0 < beta2* < 1", "beta2* = " + num(req.beta2s));
  }

  BasinPlan p;
  p.sigma = req.sigma;
  p.eta = req.eta;
  p.M = req.M;
  p.beta2s = req.beta2s;

  const double bound = req.eta / (req.eta + req.sigma);
  p.beta1s = req.beta1s ? *req.beta1s : req.beta1s_fraction * bound;
  if (!(p.beta1s > 0.0 && p.beta1s < bound)) {
    throw InfeasibleError("0 < beta1* < eta/(eta+sigma)",
                          "beta1* = " + num(p.beta1s) + ", bound = " + num(bound));
  }
  p.theta1 = (1.0 - p.beta1s) * p.eta / (p.sigma * p.beta1s) - 1.0;
  if (!(p.theta1 > 0.0)) throw InfeasibleError("theta1 > 0", "theta1 = " + num(p.theta1));

  if (req.epss) {
    p.epss = *req.epss;
  } else {
    const double root = req.eps_margin * p.sigma / p.theta1;
    p.epss = root * root;
  }
  const double root_eps = std::sqrt(p.epss);
  if (!(p.epss > 0.0 && root_eps * p.theta1 > p.sigma)) {
    throw InfeasibleError("sqrt(eps*) ((1-beta1*) eta/(sigma beta1*) - 1) > sigma",
                          "eps* = " + num(p.epss) + ", theta1 = " + num(p.theta1));
  }
  p.theta2 = root_eps - p.sigma / p.theta1;

  const double b = p.beta1s;
  const double sig = p.sigma;
  const double inner = (1.0 - b) * ((1.0 - b) * p.eta - (sig + sig * sig / root_eps) * b);
  const double eta4 = p.eta * p.eta * p.eta * p.eta;
  const double sig4 = sig * sig * sig * sig;
  const double tail = sig + root_eps;
  p.s = p.epss * eta4 * inner * inner / (2.0 * p.M * sig4 * tail * tail);
  if (!(p.s > 0.0)) throw InfeasibleError("s > 0", "s = " + num(p.s));

  if (req.C_w0) p.n0_basin = basin_step_bound(p, *req.C_w0);
  return p;
}

double basin_step_bound(const BasinPlan& plan, double C_w0) {
  if (!(C_w0 >= 0.0)) throw std::invalid_argument("basin_step_bound: C(w0) must be >= 0");
  return std::floor(C_w0 / plan.s);
}

double descent_quantum_unsimplified(const BasinPlan& plan) {
  const double b = plan.beta1s;
  const double q = b * (1.0 - b) * plan.theta1 * plan.theta2 / (plan.sigma + std::sqrt(plan.epss));
  const double eta4 = plan.eta * plan.eta * plan.eta * plan.eta;
  return eta4 * q * q / (2.0 * plan.M * plan.sigma * plan.sigma);
}

double inner_product_lower_bound(double zeta_norm, double sigma_bound, std::uint64_t n,
                                 double beta1, double beta2, double eps) {
  const double k = static_cast<double>(n) + 1.0;
  const double root_eps = std::sqrt(eps);
  const double first =
      (1.0 - beta1) / (sigma_bound * std::sqrt(1.0 - std::pow(beta2, k)) + root_eps);
  const double second = (beta1 - std::pow(beta1, k)) * sigma_bound / root_eps;
  return zeta_norm * zeta_norm * first - zeta_norm * second;
}

double theta_bound_lhs(const BasinPlan& plan, std::uint64_t n) {
  const double k = static_cast<double>(n) + 1.0;
  const double root_eps = std::sqrt(plan.epss);
  const double b = plan.beta1s;
  return (1.0 - b) / (plan.sigma * std::sqrt(1.0 - std::pow(plan.beta2s, k)) + root_eps) -
         (b - std::pow(b, k)) * plan.sigma / (plan.eta * root_eps);
}

double theta_bound_rhs(const BasinPlan& plan, std::uint64_t n) {
  const double k = static_cast<double>(n) + 1.0;
  const double root_eps = std::sqrt(plan.epss);
  const double b = plan.beta1s;
  return (b - std::pow(b, k)) * plan.theta1 * plan.theta2 / (root_eps * (plan.sigma + root_eps));
}

AdaptiveAlpha adaptive_alpha(const Point& zeta, const Point& m_next, const NonnegPoint& v_next,
                             double eps, double M) {
  if (!(M > 0.0)) throw std::invalid_argument("adaptive_alpha: M must be positive");
  const Point d = cw_div_sqrt_shift(m_next, v_next, eps);
  AdaptiveAlpha out;
  out.inner = dot(zeta, d);
  out.direction_sq_norm = dot(d, d);
  if (out.direction_sq_norm == 0.0) {
    out.degenerate = true;
    return out;
  }
  out.alpha = out.inner / (M * out.direction_sq_norm);
  return out;
}

std::string to_key_values(const LocalPlan& p) {
  std::ostringstream os;
  auto kv = [&os](const char* k, double v) { os << k << " = " << num(v) << '\n'; };
  kv("delta", p.delta);
  kv("mu", p.mu);
  kv("A", p.A);
  kv("eps", p.eps);
  kv("alpha", p.alpha);
  kv("alpha_lower", p.alpha_lower);
  kv("alpha_upper", p.alpha_upper);
  kv("beta1", p.beta1);
  kv("beta2", p.beta2);
  kv("D", p.D);
  kv("L0_m", p.L0_m);
  kv("L0_v", p.L0_v);
  kv("L0_w", p.L0_w);
  kv("L0", p.L0);
  os << "L0_term = " << p.L0_term << '\n';
  kv("L", p.L);
  kv("K1", p.K1);
  kv("K2", p.K2);
  kv("K0", p.K0);
  kv("beta", p.beta);
  os << "n0 = " << p.n0 << '\n';
  kv("K", p.K);
  kv("r_gamma", p.r_gamma);
  kv("R", p.R);
  kv("r", p.r);
  kv("eta", p.eta);
  return os.str();
}

std::string to_key_values(const BasinPlan& p) {
  std::ostringstream os;
  auto kv = [&os](const char* k, double v) { os << k << " = " << num(v) << '\n'; };
  kv("sigma", p.sigma);
  kv("eta", p.eta);
  kv("beta1", p.beta1s);
  kv("beta2", p.beta2s);
  kv("eps", p.epss);
  kv("M", p.M);
  kv("theta1", p.theta1);
  kv("theta2", p.theta2);
  kv("s", p.s);
  if (p.n0_basin) kv("n0_basin", *p.n0_basin);
  return os.str();
}

}  // namespace gadam
