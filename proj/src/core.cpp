#include "gadam/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gadam {

namespace {

void check_finite(const std::vector<double>& c) {
  if (c.empty()) {
    throw std::invalid_argument("point dimension must be at least 1");
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!std::isfinite(c[i])) {
      throw std::domain_error("non-finite coordinate at index " + std::to_string(i));
    }
  }
}

std::vector<double> check_nonneg(std::vector<double> c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 0.0) {
      throw std::domain_error("negative coordinate " + std::to_string(c[i]) + " at index " +
                              std::to_string(i));
    }
  }
  return c;
}

}  // namespace

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) { check_finite(coords_); }

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Point Point::zeros(std::size_t n) { return Point(std::vector<double>(n, 0.0)); }

NonnegPoint::NonnegPoint(std::vector<double> coords) : point_(check_nonneg(std::move(coords))) {}

NonnegPoint::NonnegPoint(std::initializer_list<double> coords)
    : NonnegPoint(std::vector<double>(coords)) {}

NonnegPoint NonnegPoint::zeros(std::size_t n) { return NonnegPoint(std::vector<double>(n, 0.0)); }

AdamState::AdamState(Point m_in, NonnegPoint v_in, Point w_in)
    : m(std::move(m_in)), v(std::move(v_in)), w(std::move(w_in)) {
  require_same_dim(m.size(), w.size(), "AdamState m/w");
  require_same_dim(v.size(), w.size(), "AdamState v/w");
}

AdamState AdamState::at_rest(const Point& w) {
  return AdamState(Point::zeros(w.size()), NonnegPoint::zeros(w.size()), w);
}

Point operator+(const Point& a, const Point& b) {
  require_same_dim(a.size(), b.size(), "operator+");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
  return Point(std::move(out));
}

Point operator-(const Point& a, const Point& b) {
  require_same_dim(a.size(), b.size(), "operator-");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return Point(std::move(out));
}

Point operator*(double s, const Point& p) {
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * p[i];
  return Point(std::move(out));
}

double dot(const Point& a, const Point& b) {
  require_same_dim(a.size(), b.size(), "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

NonnegPoint cw_square(const Point& p) {
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p[i] * p[i];
  return NonnegPoint(std::move(out));
}

Point cw_div_sqrt_shift(const Point& num, const NonnegPoint& den, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("cw_div_sqrt_shift: eps must be positive");
  require_same_dim(num.size(), den.size(), "cw_div_sqrt_shift");
  std::vector<double> out(num.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = num[i] / std::sqrt(den[i] + eps);
  return Point(std::move(out));
}

double euclid_norm(const Point& p) {
  // scaled accumulation avoids overflow for large weights
  double scale = 0.0;
  for (double c : p.coords()) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (double c : p.coords()) {
    const double r = c / scale;
    acc += r * r;
  }
  return scale * std::sqrt(acc);
}

double euclid_norm(const NonnegPoint& p) { return euclid_norm(p.point()); }

double state_inf_norm(const AdamState& x) {
  return std::max({euclid_norm(x.m), euclid_norm(x.v), euclid_norm(x.w)});
}

double triple_norm(const AdamState& x, double A) {
  if (!(A >= 1.0)) throw std::invalid_argument("triple_norm: A must be >= 1");
  return std::max({euclid_norm(x.m), euclid_norm(x.v), A * euclid_norm(x.w)});
}

AdamState offset_from(const AdamState& x, const Point& w_star) {
  return AdamState(x.m, x.v, x.w - w_star);
}

}  // namespace gadam
