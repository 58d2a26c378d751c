#include "gadam/minnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace gadam {

namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// Solves A x = b in place by Gaussian elimination with partial pivoting.
// Returns nullopt when a pivot is negligible relative to the matrix scale.
std::optional<Vec> solve_dense(std::vector<Vec> A, Vec b) {
  const std::size_t n = b.size();
  double scale = 0.0;
  for (const auto& row : A)
    for (double a : row) scale = std::max(scale, std::abs(a));
  if (scale == 0.0) return std::nullopt;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (std::abs(A[piv][col]) <= 1e-14 * scale) return std::nullopt;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = A[r][col] / A[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  Vec x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= A[i][c] * x[c];
    x[i] = acc / A[i][i];
  }
  return x;
}

// Affine combination of the corral vertices with minimum norm: weights sum to
// one but may be negative. Solved relative to the first vertex as a least-squares
// problem in the edge directions.
std::optional<Vec> affine_minimizer(const std::vector<const Vec*>& corral) {
  const std::size_t k = corral.size();
  if (k == 1) return Vec{1.0};
  const Vec& base = *corral[0];
  const std::size_t dim = base.size();
  std::vector<Vec> edges(k - 1, Vec(dim));
  for (std::size_t j = 1; j < k; ++j)
    for (std::size_t i = 0; i < dim; ++i) edges[j - 1][i] = (*corral[j])[i] - base[i];
  std::vector<Vec> gram(k - 1, Vec(k - 1));
  Vec rhs(k - 1);
  for (std::size_t a = 0; a + 1 < k; ++a) {
    for (std::size_t b = 0; b + 1 < k; ++b) gram[a][b] = dot(edges[a], edges[b]);
    rhs[a] = -dot(edges[a], base);
  }
  auto sol = solve_dense(std::move(gram), std::move(rhs));
  if (!sol) return std::nullopt;
  Vec mu(k);
  double rest = 1.0;
  for (std::size_t j = 1; j < k; ++j) {
    mu[j] = (*sol)[j - 1];
    rest -= mu[j];
  }
  mu[0] = rest;
  return mu;
}

Vec combine(const std::vector<const Vec*>& corral, const Vec& weights, std::size_t dim) {
  Vec x(dim, 0.0);
  for (std::size_t j = 0; j < corral.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) x[i] += weights[j] * (*corral[j])[i];
  return x;
}

MinNormResult make_result(const HullSpec& hull, const std::vector<std::size_t>& members,
                          const Vec& weights, const Vec& x, std::size_t iterations) {
  std::vector<double> coeffs(hull.size(), 0.0);
  for (std::size_t j = 0; j < members.size(); ++j) coeffs[members[j]] += weights[j];
  return MinNormResult{Point(x), std::move(coeffs), iterations};
}

}  // namespace

HullSpec::HullSpec(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw std::invalid_argument("HullSpec: at least one vertex required");
  for (const auto& v : vertices_) require_same_dim(v.size(), vertices_.front().size(), "HullSpec");
}

double certificate_residual(const HullSpec& hull, const Point& p, double tol) {
  const double pp = gadam::dot(p, p);
  const double pn = euclid_norm(p);
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& q : hull.vertices()) {
    const double slack = gadam::dot(p, q) - pp + tol * (1.0 + pn * euclid_norm(q));
    worst = std::max(worst, -slack);
  }
  return worst;
}

MinNormResult min_norm_point(const HullSpec& hull, const MinNormOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("min_norm_point: tol must be positive");
  const std::size_t k = hull.size();
  const std::size_t dim = hull.dim();
  const std::size_t cap =
      options.max_iterations > 0 ? options.max_iterations : 10 * k * dim + 1000;

  std::vector<Vec> verts;
  std::vector<double> norms;
  verts.reserve(k);
  for (const auto& v : hull.vertices()) {
    verts.push_back(v.values());
    norms.push_back(euclid_norm(v));
  }

  std::size_t start = 0;
  for (std::size_t j = 1; j < k; ++j)
    if (norms[j] < norms[start]) start = j;

  std::vector<std::size_t> members{start};
  Vec weights{1.0};
  Vec x = verts[start];
  std::size_t iter = 0;

  auto corral_ptrs = [&] {
    std::vector<const Vec*> ptrs;
    for (auto m : members) ptrs.push_back(&verts[m]);
    return ptrs;
  };

  auto fail = [&](const std::string& why) -> MinNormResult {
    auto best = make_result(hull, members, weights, x, iter);
    const double res = certificate_residual(hull, best.point, options.tol);
    throw MinNormError("min_norm_point: " + why, std::move(best), res);
  };

  while (true) {
    // major cycle: most violated certificate constraint
    const double xx = dot(x, x);
    const double xn = std::sqrt(xx);
    std::size_t enter = k;
    double worst = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double slack = dot(x, verts[j]) - xx + options.tol * (1.0 + xn * norms[j]);
      if (slack < worst) {
        worst = slack;
        enter = j;
      }
    }
    if (enter == k) break;
    if (std::find(members.begin(), members.end(), enter) != members.end()) {
      fail("stalled on a vertex already in the active set");
    }
    members.push_back(enter);
    weights.push_back(0.0);

    // minor cycles: move to the affine minimizer, dropping vertices as needed
    while (true) {
      if (++iter > cap) fail("iteration cap reached");
      auto mu = affine_minimizer(corral_ptrs());
      if (!mu) fail("degenerate active set");
      bool interior = true;
      for (double m : *mu) interior = interior && m > 0.0;
      if (interior) {
        weights = std::move(*mu);
        x = combine(corral_ptrs(), weights, dim);
        break;
      }
      double theta = 1.0;
      for (std::size_t j = 0; j < mu->size(); ++j) {
        if ((*mu)[j] <= 0.0) {
          const double denom = weights[j] - (*mu)[j];
          if (denom > 0.0) theta = std::min(theta, weights[j] / denom);
        }
      }
      for (std::size_t j = 0; j < weights.size(); ++j)
        weights[j] = (1.0 - theta) * weights[j] + theta * (*mu)[j];

      // drop the vertices whose weight reached zero
      std::vector<std::size_t> kept_members;
      Vec kept_weights;
      for (std::size_t j = 0; j < weights.size(); ++j) {
        if (weights[j] > 1e-15) {
          kept_members.push_back(members[j]);
          kept_weights.push_back(weights[j]);
        }
      }
      if (kept_members.size() == members.size()) {
        // theta rounding left every weight positive; drop the smallest
        auto it = std::min_element(kept_weights.begin(), kept_weights.end());
        const auto pos = static_cast<std::size_t>(it - kept_weights.begin());
        kept_members.erase(kept_members.begin() + static_cast<std::ptrdiff_t>(pos));
        kept_weights.erase(it);
      }
      double total = 0.0;
      for (double w : kept_weights) total += w;
      for (double& w : kept_weights) w /= total;
      members = std::move(kept_members);
      weights = std::move(kept_weights);
      x = combine(corral_ptrs(), weights, dim);
    }
  }
  return make_result(hull, members, weights, x, iter);
}

bool hull_contains_origin(const HullSpec& hull, const MinNormOptions& options) {
  return euclid_norm(min_norm_point(hull, options).point) <= options.tol;
}

}  // namespace gadam
