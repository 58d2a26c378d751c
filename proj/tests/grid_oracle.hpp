#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gadam/core.hpp"

namespace gadam::testing {

// Smallest norm over the hull of at most three vertices by barycentric grid search:
// a pass with the given step, then a pass with step/100 over a window of two coarse
// steps around the best coarse point. The coarse pass alone is off by about
// step * edge length, which exceeds 1e-3 for vertices of size 3.
inline double grid_min_norm(const std::vector<Point>& v, double step = 1e-3) {
  if (v.size() == 1) return euclid_norm(v[0]);
  auto norm_of = [&](double a, double b) {
    const double w[3] = {a, b, 1.0 - a - b};
    double sq = 0.0;
    for (std::size_t i = 0; i < v[0].size(); ++i) {
      double x = 0.0;
      for (std::size_t k = 0; k < v.size(); ++k) x += w[k] * v[k][i];
      sq += x * x;
    }
    return std::sqrt(sq);
  };
  const bool edge = v.size() == 2;
  double best = std::numeric_limits<double>::infinity();
  double best_a = 0.0, best_b = 0.0;
  auto scan = [&](double a_lo, double a_hi, double b_lo, double b_hi, double h) {
    const int na = static_cast<int>(std::lround((a_hi - a_lo) / h));
    const int nb = static_cast<int>(std::lround((b_hi - b_lo) / h));
    for (int i = 0; i <= na; ++i) {
      const double a = std::clamp(a_lo + i * h, 0.0, 1.0);
      for (int j = 0; j <= nb; ++j) {
        const double b = edge ? 1.0 - a : std::clamp(b_lo + j * h, 0.0, 1.0);
        if (a + b > 1.0 + 1e-12) break;
        const double n = norm_of(a, std::min(b, 1.0 - a));
        if (n < best) {
          best = n;
          best_a = a;
          best_b = std::min(b, 1.0 - a);
        }
        if (edge) break;
      }
    }
  };
  scan(0.0, 1.0, 0.0, 1.0, step);
  const double fine = step / 100.0;
  const double a0 = best_a, b0 = best_b;
  scan(std::max(0.0, a0 - 2 * step), std::min(1.0, a0 + 2 * step), std::max(0.0, b0 - 2 * step),
       std::min(1.0, b0 + 2 * step), fine);
  return best;
}

}  // namespace gadam::testing
