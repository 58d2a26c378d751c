#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gadam {

/// A weight vector in R^N. Entries are finite and N >= 1; values never change
/// after construction.
class Point {
 public:
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  static Point zeros(std::size_t n);

  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double>& values() const noexcept { return coords_; }

  bool operator==(const Point&) const = default;

 private:
  std::vector<double> coords_;
};

/// A point of [0, +inf)^N, the domain of the second moment.
class NonnegPoint {
 public:
  explicit NonnegPoint(std::vector<double> coords);
  NonnegPoint(std::initializer_list<double> coords);

  static NonnegPoint zeros(std::size_t n);

  std::size_t size() const noexcept { return point_.size(); }
  double operator[](std::size_t i) const { return point_[i]; }
  std::span<const double> coords() const noexcept { return point_.coords(); }
  const Point& point() const noexcept { return point_; }

  bool operator==(const NonnegPoint&) const = default;

 private:
  Point point_;
};

/// The iterate x = (m, v, w) of the optimizer viewed as a dynamical system.
struct AdamState {
  AdamState(Point m_in, NonnegPoint v_in, Point w_in);

  /// (0, 0, w): the state every run starts from.
  static AdamState at_rest(const Point& w);

  std::size_t dim() const noexcept { return w.size(); }

  Point m;
  NonnegPoint v;
  Point w;

  bool operator==(const AdamState&) const = default;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(double s, const Point& p);

double dot(const Point& a, const Point& b);

NonnegPoint cw_square(const Point& p);

/// num[i] / sqrt(den[i] + eps).
Point cw_div_sqrt_shift(const Point& num, const NonnegPoint& den, double eps);

double euclid_norm(const Point& p);
double euclid_norm(const NonnegPoint& p);

/// max{|m|, |v|, |w|}.
double state_inf_norm(const AdamState& x);

/// max{|m|, |v|, A |w|} for A >= 1.
double triple_norm(const AdamState& x, double A);

/// x - x* for x* = (0, 0, w_star). Moments are untouched since x* has zero moments.
AdamState offset_from(const AdamState& x, const Point& w_star);

void require_same_dim(std::size_t a, std::size_t b, const char* what);

}  // namespace gadam
