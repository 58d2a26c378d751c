#include "gadam/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gadam/format.hpp"
#include "gadam/optimizer.hpp"

namespace gadam {

namespace {

std::string num(double x) { return format_double(x); }

Point require_minimizer(const Objective& oracle, const char* who) {
  auto w = oracle.minimizer();
  if (!w) throw std::invalid_argument(std::string(who) + ": the objective declares no minimizer");
  return *w;
}

std::string describe(const AdamState& x) {
  return "m = " + format_vector(x.m.values()) + ", v = " + format_vector(x.v.point().values()) +
         ", w = " + format_vector(x.w.values());
}

/// Uniform draw from B_inf(x*, r) intersected with X: each block in its own ball, v clamped.
AdamState sample_state(std::mt19937_64& rng, const Point& w_star, double r) {
  const std::size_t n = w_star.size();
  const Point origin = Point::zeros(n);
  Point m = uniform_in_ball(rng, origin, r);
  Point raw_v = uniform_in_ball(rng, origin, r);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::max(0.0, raw_v[i]);
  Point w = uniform_in_ball(rng, w_star, r);
  return AdamState(std::move(m), NonnegPoint(std::move(v)), std::move(w));
}

void record_violation(CheckReport& rep, std::string witness) {
  ++rep.violations;
  rep.passed = false;
  if (!rep.witness) rep.witness = std::move(witness);
}

}  // namespace

std::string CheckReport::to_text() const {
  std::ostringstream os;
  os << "check " << name << ": " << (passed ? "PASS" : "FAIL") << '\n';
  os << "  bound = " << num(bound) << '\n';
  os << "  max_ratio = " << num(max_ratio) << '\n';
  os << "  checked = " << checked << '\n';
  os << "  violations = " << violations << '\n';
  if (failing_step) os << "  failing_step = " << *failing_step << '\n';
  if (witness) os << "  witness = " << *witness << '\n';
  for (const auto& n : notes) os << "  note = " << n << '\n';
  return os.str();
}

LocalPlan negative_control_plan(const LocalPlan& certified, double alpha_factor) {
  LocalPlan p = certified;
  p.alpha = certified.alpha * alpha_factor;
  p.beta1 = 1.0 - certified.delta * std::sqrt(certified.eps) /
                      (2.0 * p.alpha * certified.mu * certified.mu);
  return p;
}

CheckReport check_gamma_contraction(const Objective& oracle, const LocalPlan& plan,
                                    std::size_t samples, std::uint64_t seed, double slack) {
  const Point w_star = require_minimizer(oracle, "check_gamma_contraction");
  const AdamParams params = plan.params();
  CheckReport rep;
  rep.name = "gamma_contraction";
  rep.bound = plan.L0;
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const AdamState x = sample_state(rng, w_star, plan.r);
    const double before = triple_norm(offset_from(x, w_star), plan.A);
    if (before == 0.0) continue;
    const AdamState g = gamma_map(x, oracle.clarke_selection(x.w), params);
    const double after = triple_norm(offset_from(g, w_star), plan.A);
    ++rep.checked;
    rep.max_ratio = std::max(rep.max_ratio, after / before);
    if (after > plan.L0 * before + slack) {
      record_violation(rep, describe(x) + ", ratio = " + num(after / before));
    }
  }
  return rep;
}

CheckReport check_omega_decay(const Objective& oracle, const LocalPlan& plan, std::size_t samples,
                              std::uint64_t n_max, std::uint64_t seed, double slack) {
  const Point w_star = require_minimizer(oracle, "check_omega_decay");
  const AdamParams params = plan.params();
  CheckReport rep;
  rep.name = "omega_decay";
  rep.bound = plan.K0;
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const AdamState x = sample_state(rng, w_star, plan.r);
    const double dist = state_inf_norm(offset_from(x, w_star));
    if (dist == 0.0) continue;
    const Point zeta = oracle.clarke_selection(x.w);
    double power = 1.0;
    for (std::uint64_t n = 0; n <= n_max; ++n, power *= plan.beta) {
      const double omega = euclid_norm(omega_map(n, x, zeta, params));
      const double rhs = plan.K0 * power * dist;
      ++rep.checked;
      if (power > 0.0) rep.max_ratio = std::max(rep.max_ratio, omega / (power * dist));
      if (omega > rhs + slack) {
        record_violation(rep, describe(x) + ", n = " + std::to_string(n) +
                                  ", |Omega| = " + num(omega) + ", bound = " + num(rhs));
      }
    }
  }
  return rep;
}

CheckReport check_basin_descent(const Trace& trace, const BasinPlan& plan, double slack) {
  CheckReport rep;
  rep.name = "basin_descent";
  rep.bound = -plan.s;
  rep.max_ratio = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < trace.records.size(); ++i) {
    const TraceRow& cur = trace.records[i].row;
    if (!(cur.zeta_norm > plan.eta)) continue;
    const double change = trace.records[i + 1].row.C - cur.C;
    ++rep.checked;
    rep.max_ratio = std::max(rep.max_ratio, change);
    if (change > -plan.s + slack) {
      if (!rep.failing_step) rep.failing_step = cur.n;
      record_violation(rep, "n = " + std::to_string(cur.n) + ", C change = " + num(change));
    }
  }
  if (rep.checked == 0) {
    rep.max_ratio = 0.0;
    rep.notes.push_back("no step left an iterate with |zeta| > eta");
  }
  return rep;
}

CheckReport check_inner_product_bound(const BasinPlan& plan, const Trace& trace, double slack) {
  CheckReport rep;
  rep.name = "inner_product_bound";
  rep.bound = 0.0;
  rep.max_ratio = -std::numeric_limits<double>::infinity();
  double sigma_n = 0.0;
  for (const auto& rec : trace.records) {
    sigma_n = std::max(sigma_n, rec.row.zeta_norm);
    if (!std::isfinite(rec.inner)) continue;
    const double lower = inner_product_lower_bound(rec.row.zeta_norm, sigma_n, rec.row.n,
                                                   plan.beta1s, plan.beta2s, plan.epss);
    ++rep.checked;
    rep.max_ratio = std::max(rep.max_ratio, lower - rec.inner);
    if (rec.inner < lower - slack) {
      if (!rep.failing_step) rep.failing_step = rec.row.n;
      record_violation(rep, "n = " + std::to_string(rec.row.n) + ", inner = " + num(rec.inner) +
                                ", lower bound = " + num(lower));
    }
  }
  if (rep.checked == 0) {
    rep.max_ratio = 0.0;
    rep.notes.push_back("trace records no inner products");
  }
  return rep;
}

CheckReport check_local_envelope(const Trace& trace, const LocalPlan& plan, double slack) {
  CheckReport rep;
  rep.name = "local_envelope";
  rep.bound = 1.0;
  if (trace.records.empty()) return rep;
  const double x0 = trace.records.front().row.triple_err;
  if (!std::isfinite(x0)) throw std::invalid_argument("check_local_envelope: trace has no error column");
  if (x0 > plan.r / plan.K) {
    rep.notes.push_back("|||x0 - x*||| = " + num(x0) + " exceeds r/K = " + num(plan.r / plan.K));
  }
  for (const auto& rec : trace.records) {
    if (rec.row.n < plan.n0) continue;
    const double env =
        plan.K * std::pow(plan.L, static_cast<double>(rec.row.n - plan.n0)) * x0;
    ++rep.checked;
    if (env > 0.0) rep.max_ratio = std::max(rep.max_ratio, rec.row.triple_err / env);
    if (rec.row.triple_err > env + slack) {
      if (!rep.failing_step) rep.failing_step = rec.row.n;
      record_violation(rep, "n = " + std::to_string(rec.row.n) + ", |||x - x*||| = " +
                                num(rec.row.triple_err) + ", envelope = " + num(env));
    }
  }
  return rep;
}

RateFit fit_rate(std::span<const TraceRow> rows, double tail_fraction, RateColumn column) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw std::invalid_argument("fit_rate: tail_fraction must be in (0, 1]");
  }
  std::size_t prefix = 0;
  for (const auto& r : rows) {
    const double e = column == RateColumn::triple_err ? r.triple_err : r.err_w;
    if (!(e > 0.0) || !std::isfinite(e)) break;
    ++prefix;
  }
  if (prefix < 2) {
    throw std::invalid_argument("fit_rate: need at least 2 rows with positive error, have " +
                                std::to_string(prefix));
  }
  RateFit fit;
  if (prefix < rows.size()) {
    fit.note = "fit over the positive prefix (" + std::to_string(prefix) + " of " +
               std::to_string(rows.size()) + " rows)";
  }
  const auto take = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(prefix))));
  const std::size_t first = prefix - std::min(take, prefix);
  const std::size_t count = prefix - first;
  if (count < 10) {
    if (!fit.note.empty()) fit.note += "; ";
    fit.note += "only " + std::to_string(count) + " points";
  }

  std::vector<double> xs(count), ys(count);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const TraceRow& r = rows[first + i];
    xs[i] = static_cast<double>(r.n);
    ys[i] = std::log(column == RateColumn::triple_err ? r.triple_err : r.err_w);
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(count);
  my /= static_cast<double>(count);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - slope * mx;
  fit.rate = std::exp(slope);
  double ss = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double e = ys[i] - (fit.intercept + slope * xs[i]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(count));
  fit.window = {rows[first].n, rows[prefix - 1].n};
  fit.points = count;
  return fit;
}

RateFit fit_rate(const Trace& trace, double tail_fraction, RateColumn column) {
  const auto rows = trace.rows();
  return fit_rate(std::span<const TraceRow>(rows), tail_fraction, column);
}

}  // namespace gadam
