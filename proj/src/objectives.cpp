#include "gadam/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gadam/errors.hpp"
#include "gadam/minnorm.hpp"

namespace gadam {

namespace {

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

double max_abs(const Point& w) {
  double a = 0.0;
  for (double c : w.coords()) a = std::max(a, std::abs(c));
  return a;
}

std::vector<std::size_t> tied_max_coords(const Point& w, double a, double tie_tol) {
  std::vector<std::size_t> tied;
  const double cut = a - tie_tol * a;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (std::abs(w[i]) >= cut) tied.push_back(i);
  return tied;
}

Point scaled_axis(std::size_t dim, std::size_t i, double value) {
  std::vector<double> c(dim, 0.0);
  c[i] = value;
  return Point(std::move(c));
}

class SqL2Scaled final : public Objective {
 public:
  explicit SqL2Scaled(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw std::invalid_argument("sq_l2_scaled: dim must be >= 1");
  }
  std::string name() const override { return "sq_l2_scaled"; }
  std::size_t dim() const override { return dim_; }
  double eval(const Point& w) const override {
    require_same_dim(w.size(), dim_, "sq_l2_scaled");
    return dot(w, w) / static_cast<double>(dim_);
  }
  Point clarke_selection(const Point& w) const override {
    require_same_dim(w.size(), dim_, "sq_l2_scaled");
    return (2.0 / static_cast<double>(dim_)) * w;
  }
  std::optional<Point> minimizer() const override { return Point::zeros(dim_); }

 private:
  std::size_t dim_;
};

class SqLinf final : public Objective {
 public:
  SqLinf(std::size_t dim, double tie_tol) : dim_(dim), tie_tol_(tie_tol) {
    if (dim == 0) throw std::invalid_argument("sq_linf: dim must be >= 1");
  }
  std::string name() const override { return "sq_linf"; }
  std::size_t dim() const override { return dim_; }
  double eval(const Point& w) const override {
    require_same_dim(w.size(), dim_, "sq_linf");
    const double a = max_abs(w);
    return a * a;
  }
  Point clarke_selection(const Point& w) const override {
    require_same_dim(w.size(), dim_, "sq_linf");
    const double a = max_abs(w);
    if (a == 0.0) return Point::zeros(dim_);
    const auto tied = tied_max_coords(w, a, tie_tol_);
    if (tied.size() == 1) return scaled_axis(dim_, tied[0], 2.0 * a * sign_of(w[tied[0]]));
    std::vector<Point> limits;
    for (auto i : tied) limits.push_back(scaled_axis(dim_, i, 2.0 * a * sign_of(w[i])));
    return min_norm_point(HullSpec(std::move(limits))).point;
  }
  std::optional<Point> minimizer() const override { return Point::zeros(dim_); }

 private:
  std::size_t dim_;
  double tie_tol_;
};

class PhiNorm final : public Objective {
 public:
  explicit PhiNorm(PhiNormObjective spec) : spec_(std::move(spec)) {}

  std::string name() const override {
    return "phi_norm(" + spec_.phi.name + "," + to_string(spec_.norm) + ")";
  }
  std::size_t dim() const override { return spec_.dim; }

  double eval(const Point& w) const override {
    require_same_dim(w.size(), spec_.dim, "phi_norm");
    return spec_.phi.value(norm(w));
  }

  Point clarke_selection(const Point& w) const override {
    require_same_dim(w.size(), spec_.dim, "phi_norm");
    const double r = norm(w);
    if (r == 0.0) return Point::zeros(spec_.dim);
    const auto deriv = spec_.phi.derivative(r);
    if (!deriv) throw OracleError(name() + ": profile derivative undefined at r = " + std::to_string(r));

    std::vector<double> slopes{deriv->left};
    if (deriv->right != deriv->left) slopes.push_back(deriv->right);
    const auto grads = norm_limiting_gradients(w, r);

    if (slopes.size() == 1 && grads.size() == 1) return slopes[0] * grads[0];
    std::vector<Point> limits;
    for (double s : slopes)
      for (const auto& g : grads) limits.push_back(s * g);
    return min_norm_point(HullSpec(std::move(limits))).point;
  }

  std::optional<Point> minimizer() const override { return Point::zeros(spec_.dim); }

 private:
  double norm(const Point& w) const {
    switch (spec_.norm) {
      case NormKind::euclid:
        return euclid_norm(w);
      case NormKind::linf:
        return max_abs(w);
      case NormKind::scaled_euclid: {
        double acc = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) acc += spec_.weights[i] * w[i] * w[i];
        return std::sqrt(acc);
      }
    }
    return 0.0;
  }

  // Gradients of the norm at nearby differentiability points; w != 0.
  std::vector<Point> norm_limiting_gradients(const Point& w, double r) const {
    switch (spec_.norm) {
      case NormKind::euclid:
        return {(1.0 / r) * w};
      case NormKind::scaled_euclid: {
        std::vector<double> g(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) g[i] = spec_.weights[i] * w[i] / r;
        return {Point(std::move(g))};
      }
      case NormKind::linf: {
        std::vector<Point> out;
        for (auto i : tied_max_coords(w, r, spec_.tie_tol))
          out.push_back(scaled_axis(w.size(), i, sign_of(w[i])));
        return out;
      }
    }
    return {};
  }

  PhiNormObjective spec_;
};

}  // namespace

const char* to_string(NormKind kind) {
  switch (kind) {
    case NormKind::euclid:
      return "euclid";
    case NormKind::linf:
      return "linf";
    case NormKind::scaled_euclid:
      return "scaled-euclid";
  }
  return "?";
}

NormKind parse_norm_kind(const std::string& name) {
  if (name == "euclid") return NormKind::euclid;
  if (name == "linf") return NormKind::linf;
  if (name == "scaled-euclid" || name == "scaled_euclid") return NormKind::scaled_euclid;
  throw std::invalid_argument("unknown norm kind '" + name + "'");
}

ObjectivePtr sq_l2_scaled(std::size_t dim) { return std::make_shared<SqL2Scaled>(dim); }

ObjectivePtr sq_linf(std::size_t dim, double tie_tol) {
  return std::make_shared<SqLinf>(dim, tie_tol);
}

ScalarProfile quadratic_profile(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("quadratic_profile: c must be positive");
  ScalarProfile p;
  p.name = "quadratic";
  p.value = [c](double r) { return c * r * r; };
  p.derivative = [c](double r) -> std::optional<OneSidedDerivative> {
    const double d = 2.0 * c * r;
    return OneSidedDerivative{d, d};
  };
  p.delta_prime = 2.0 * c;
  p.mu_prime = 2.0 * c;
  return p;
}

ScalarProfile kinked_quadratic_profile(double knee, double inner, double outer) {
  if (!(knee > 0.0 && inner > 0.0 && outer > 0.0))
    throw std::invalid_argument("kinked_quadratic_profile: parameters must be positive");
  ScalarProfile p;
  p.name = "kinked_quadratic";
  p.value = [=](double r) {
    return r <= knee ? inner * r * r : outer * r * r + (inner - outer) * knee * knee;
  };
  p.derivative = [=](double r) -> std::optional<OneSidedDerivative> {
    if (r < knee) return OneSidedDerivative{2.0 * inner * r, 2.0 * inner * r};
    if (r > knee) return OneSidedDerivative{2.0 * outer * r, 2.0 * outer * r};
    return OneSidedDerivative{2.0 * inner * r, 2.0 * outer * r};
  };
  p.delta_prime = 2.0 * std::min(inner, outer);
  p.mu_prime = 2.0 * std::max(inner, outer);
  return p;
}

ObjectivePtr phi_norm_objective(PhiNormObjective spec) {
  if (spec.dim == 0) throw std::invalid_argument("phi_norm_objective: dim must be >= 1");
  if (!spec.phi.value || !spec.phi.derivative)
    throw std::invalid_argument("phi_norm_objective: profile needs value and derivative");
  if (!(spec.phi.delta_prime > 0.0 && spec.phi.delta_prime <= spec.phi.mu_prime))
    throw std::invalid_argument("phi_norm_objective: need 0 < delta' <= mu'");
  if (spec.norm == NormKind::scaled_euclid) {
    if (spec.weights.size() != spec.dim)
      throw std::invalid_argument("phi_norm_objective: scaled-euclid needs one weight per coordinate");
    for (double s : spec.weights)
      if (!(s > 0.0)) throw std::invalid_argument("phi_norm_objective: weights must be positive");
  }
  // delta' r <= phi'(r) <= mu' r on a log-spaced radius grid
  for (int k = -400; k <= 200; ++k) {
    const double r = std::pow(10.0, k / 100.0);
    const auto d = spec.phi.derivative(r);
    if (!d) continue;
    for (double slope : {d->left, d->right}) {
      const double lo = spec.phi.delta_prime * r;
      const double hi = spec.phi.mu_prime * r;
      const double slack = 1e-12 * hi;
      if (slope < lo - slack || slope > hi + slack) {
        throw std::invalid_argument("phi_norm_objective: profile '" + spec.phi.name +
                                    "' violates delta' r <= phi'(r) <= mu' r at r = " +
                                    std::to_string(r));
      }
    }
  }
  return std::make_shared<PhiNorm>(std::move(spec));
}

Point uniform_in_ball(std::mt19937_64& rng, const Point& center, double radius,
                      double min_radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("uniform_in_ball: radius must be positive");
  const std::size_t n = center.size();
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> dir(n);
  while (true) {
    double len2 = 0.0;
    for (auto& d : dir) {
      d = gauss(rng);
      len2 += d * d;
    }
    if (len2 == 0.0) continue;
    const double rho = radius * std::pow(unif(rng), 1.0 / static_cast<double>(n));
    if (rho < min_radius) continue;
    const double f = rho / std::sqrt(len2);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = center[i] + f * dir[i];
    return Point(std::move(out));
  }
}

HypothesisEstimate estimate_growth(const Objective& oracle, const Point& w_star, double radius,
                                   std::size_t samples, std::uint64_t seed) {
  if (!(radius > 0.0)) throw std::invalid_argument("estimate_growth: radius must be positive");
  if (samples == 0) throw std::invalid_argument("estimate_growth: need at least one sample");
  require_same_dim(w_star.size(), oracle.dim(), "estimate_growth");

  std::mt19937_64 rng(seed);
  HypothesisEstimate est;
  est.radius = radius;
  est.sample_count = samples;
  est.seed = seed;
  est.mu_hat = 0.0;
  est.delta_hat = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    const Point w = uniform_in_ball(rng, w_star, radius, 1e-8 * radius);
    const Point d = w - w_star;
    const Point z = oracle.clarke_selection(w);
    const double dn = euclid_norm(d);
    const double zn = euclid_norm(z);
    est.mu_hat = std::max(est.mu_hat, zn / dn);
    est.delta_hat = std::min(est.delta_hat, dot(z, d) / (dn * dn));
    est.sigma_hat = std::max(est.sigma_hat, zn);
  }
  est.hypothesis_ok = est.delta_hat > 0.0;
  if (!est.hypothesis_ok) {
    est.note = "delta_hat <= 0: <zeta_w, w - w*> >= delta |w - w*|^2 fails on the sampled ball";
  }
  return est;
}

double recheck_growth(const Objective& oracle, const HypothesisEstimate& estimate,
                      const Point& w_star, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Point w = uniform_in_ball(rng, w_star, estimate.radius, 1e-8 * estimate.radius);
    const Point d = w - w_star;
    const Point z = oracle.clarke_selection(w);
    const double dn = euclid_norm(d);
    const double mu_ratio = euclid_norm(z) / dn;
    const double delta_ratio = dot(z, d) / (dn * dn);
    if (estimate.mu_hat > 0.0)
      worst = std::max(worst, (mu_ratio - estimate.mu_hat) / estimate.mu_hat);
    else
      worst = std::max(worst, mu_ratio);
    if (estimate.delta_hat != 0.0)
      worst = std::max(worst, (estimate.delta_hat - delta_ratio) / std::abs(estimate.delta_hat));
    else
      worst = std::max(worst, -delta_ratio);
  }
  return worst;
}

double estimate_descent_constant(const Objective& oracle, const Point& center,
                                 const DescentSampling& sampling) {
  if (sampling.pair_samples == 0)
    throw std::invalid_argument("estimate_descent_constant: need at least one pair");
  if (!(sampling.region_radius > 0.0 && sampling.pair_radius > 0.0))
    throw std::invalid_argument("estimate_descent_constant: radii must be positive");
  std::mt19937_64 rng(sampling.seed);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < sampling.pair_samples; ++s) {
    const Point w = uniform_in_ball(rng, center, sampling.region_radius);
    const Point w2 = uniform_in_ball(rng, w, sampling.pair_radius, 1e-3 * sampling.pair_radius);
    const Point h = w2 - w;
    const double hn2 = dot(h, h);
    const double rem = oracle.eval(w2) - oracle.eval(w) - dot(oracle.clarke_selection(w), h);
    best = std::max(best, 2.0 * rem / hn2);
  }
  return std::max(best, sampling.floor);
}

}  // namespace gadam
