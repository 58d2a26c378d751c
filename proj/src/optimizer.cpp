#include "gadam/optimizer.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace gadam {

namespace {

struct Moments {
  Point m;
  NonnegPoint v;
  Point direction;  // m' / sqrt(v' + eps)
};

Moments advance_moments(const AdamState& x, const Point& zeta, const AdamParams& p) {
  require_same_dim(zeta.size(), x.dim(), "zeta");
  const std::size_t n = x.dim();
  std::vector<double> m(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = p.beta1 * x.m[i] + (1.0 - p.beta1) * zeta[i];
    v[i] = p.beta2 * x.v[i] + (1.0 - p.beta2) * (zeta[i] * zeta[i]);
  }
  Point m_next(std::move(m));
  NonnegPoint v_next(std::move(v));
  Point dir = cw_div_sqrt_shift(m_next, v_next, p.eps);
  return {std::move(m_next), std::move(v_next), std::move(dir)};
}

Point w_minus(const Point& w, double alpha, const Point& dir) {
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = w[i] - alpha * dir[i];
  return Point(std::move(out));
}

Point omega_from(std::uint64_t n, const Point& dir, const AdamParams& p) {
  const double coeff = -p.require_alpha() * (bias_factor(n, p) - 1.0);
  return coeff * dir;
}

}  // namespace

void AdamParams::validate() const {
  if (!(eps > 0.0)) throw std::invalid_argument("AdamParams: eps must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw std::invalid_argument("AdamParams: beta1 must be in [0,1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) throw std::invalid_argument("AdamParams: beta2 must be in [0,1)");
  if (alpha && !(*alpha > 0.0)) throw std::invalid_argument("AdamParams: alpha must be > 0");
}

double AdamParams::require_alpha() const {
  if (!alpha) throw std::invalid_argument("AdamParams: fixed alpha required");
  return *alpha;
}

AdamState generalized_step(const AdamState& x, const Point& zeta, double alpha_n,
                           const AdamParams& p) {
  p.validate();
  auto mom = advance_moments(x, zeta, p);
  Point w = w_minus(x.w, alpha_n, mom.direction);
  return AdamState(std::move(mom.m), std::move(mom.v), std::move(w));
}

double bias_factor(std::uint64_t n, const AdamParams& p) {
  const double k = static_cast<double>(n) + 1.0;
  return std::sqrt(1.0 - std::pow(p.beta2, k)) / (1.0 - std::pow(p.beta1, k));
}

StepReport adam_step(const AdamState& x, const Point& zeta, std::uint64_t n, const AdamParams& p) {
  p.validate();
  const double alpha = p.require_alpha();
  auto mom = advance_moments(x, zeta, p);
  AdamState gamma(mom.m, mom.v, w_minus(x.w, alpha, mom.direction));
  Point omega = omega_from(n, mom.direction, p);
  AdamState after(std::move(mom.m), std::move(mom.v), gamma.w + omega);
  return StepReport{std::move(after), zeta, alpha * bias_factor(n, p), std::move(gamma),
                    std::move(omega)};
}

AdamState gamma_map(const AdamState& x, const Point& zeta, const AdamParams& p) {
  p.validate();
  const double alpha = p.require_alpha();
  auto mom = advance_moments(x, zeta, p);
  Point w = w_minus(x.w, alpha, mom.direction);
  return AdamState(std::move(mom.m), std::move(mom.v), std::move(w));
}

Point omega_map(std::uint64_t n, const AdamState& x, const Point& zeta, const AdamParams& p) {
  p.validate();
  return omega_from(n, advance_moments(x, zeta, p).direction, p);
}

std::pair<Point, NonnegPoint> moments_closed_form(std::span<const Point> zeta_history,
                                                  const Point& m0, const NonnegPoint& v0,
                                                  const AdamParams& p) {
  if (zeta_history.empty()) throw std::invalid_argument("moments_closed_form: empty history");
  const std::size_t dim = m0.size();
  require_same_dim(v0.size(), dim, "moments_closed_form v0");
  const std::size_t n = zeta_history.size() - 1;
  const double steps = static_cast<double>(n + 1);
  std::vector<double> m(dim), v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    m[i] = std::pow(p.beta1, steps) * m0[i];
    v[i] = std::pow(p.beta2, steps) * v0[i];
  }
  for (std::size_t k = 0; k <= n; ++k) {
    const Point& z = zeta_history[k];
    require_same_dim(z.size(), dim, "moments_closed_form zeta");
    const double e = static_cast<double>(n - k);
    const double c1 = (1.0 - p.beta1) * std::pow(p.beta1, e);
    const double c2 = (1.0 - p.beta2) * std::pow(p.beta2, e);
    for (std::size_t i = 0; i < dim; ++i) {
      m[i] += c1 * z[i];
      v[i] += c2 * z[i] * z[i];
    }
  }
  return {Point(std::move(m)), NonnegPoint(std::move(v))};
}

}  // namespace gadam
