#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gadam/core.hpp"

namespace gadam {

/// Vertices whose convex hull is searched; typically the limiting gradients at a
/// nonsmooth point.
class HullSpec {
 public:
  explicit HullSpec(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  std::size_t dim() const noexcept { return vertices_.front().size(); }

 private:
  std::vector<Point> vertices_;
};

struct MinNormResult {
  Point point;
  /// Barycentric weights, one per vertex, nonnegative and summing to one.
  std::vector<double> coefficients;
  std::size_t iterations = 0;
};

struct MinNormOptions {
  double tol = 1e-10;
  /// 0 selects 10 * vertices * dim + 1000.
  std::size_t max_iterations = 0;
};

class MinNormError : public std::runtime_error {
 public:
  MinNormError(const std::string& what, MinNormResult best, double residual)
      : std::runtime_error(what), best_(std::move(best)), residual_(residual) {}

  const MinNormResult& best() const noexcept { return best_; }
  /// certificate_residual() of the best iterate.
  double residual() const noexcept { return residual_; }

 private:
  MinNormResult best_;
  double residual_;
};

/// Minimum-norm point of the convex hull, via Wolfe's nearest-point algorithm.
///
/// On return `point` satisfies <p, q - p> >= -tol (1 + |p| |q|) for every vertex q,
/// which is the first-order optimality condition over the hull. Throws
/// MinNormError carrying the best iterate if the iteration cap is hit first.
MinNormResult min_norm_point(const HullSpec& hull, const MinNormOptions& options = {});

bool hull_contains_origin(const HullSpec& hull, const MinNormOptions& options = {});

/// Largest violation of the optimality certificate at p (<= 0 means certified).
double certificate_residual(const HullSpec& hull, const Point& p, double tol);

}  // namespace gadam
