// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "gadam/driver.hpp"
#include "gadam/format.hpp"
#include "gadam/harness.hpp"
#include "gadam/minnorm.hpp"
#include "gadam/optimizer.hpp"
#include "gadam/planner.hpp"
#include "grid_oracle.hpp"

using namespace gadam;
using gadam::testing::grid_min_norm;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

LocalPlan worked_plan() {
  LocalPlanRequest q;
  q.delta = 0.4;
  q.mu = 0.4;
  q.A = 1.0;
  q.eps = 1.0;
  q.beta2 = 0.1;
  q.alpha = AlphaChoice::upper();
  return plan_local(q);
}

std::string num(double x) { return format_double(x); }

Point random_point(std::mt19937_64& rng, std::size_t n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> c(n);
  for (auto& x : c) x = u(rng);
  return Point(std::move(c));
}

Outcome criterion1() {
  const double delta = 0.4, mu = 0.4, eps = 1.0;
  const double alpha = delta * std::sqrt(eps) / (2 * mu * mu) * (1 + delta / 4.0);
  const double beta1 = 1.0 - delta * std::sqrt(eps) / (2 * alpha * mu * mu);
  const double D = compute_D(delta, mu, eps, alpha, beta1);
  const double err = std::abs(D - std::sqrt(11.0) / 4.0);
  return {err <= 1e-12, "D = " + num(D) + ", |D - sqrt(11)/4| = " + num(err)};
}

Outcome criterion2() {
  const LocalPlan p = worked_plan();
  const double s11 = std::sqrt(11.0);
  const double eL0 = std::abs(p.L0 - (1 + 2 * s11) / 8);
  const double eL = std::abs(p.L - (9 + 2 * s11) / 16);
  const bool ok = eL0 <= 1e-12 && eL <= 1e-12 && p.beta1 <= 0.2 && p.K < 3.0;
  return {ok, "L0 = " + num(p.L0) + " (err " + num(eL0) + "), L = " + num(p.L) + " (err " + num(eL) +
                  "), beta1 = " + num(p.beta1) + ", K = " + num(p.K)};
}

Outcome criterion3() {
  const LocalPlan p = worked_plan();
  const AdamParams params = p.params();
  std::string detail;
  bool ok = true;
  for (const ObjectivePtr& f : {sq_l2_scaled(5), sq_linf(2)}) {
    const AdamState start = AdamState::at_rest(*f->minimizer());
    AdamState x = start;
    for (std::uint64_t n = 0; n < 1000; ++n) x = adam_step(x, f->clarke_selection(x.w), n, params).state_after;
    const bool same = x == start;
    ok = ok && same;
    detail += f->name() + (same ? " unchanged; " : " moved; ");
  }
  return {ok, detail + "1000 steps each"};
}

Outcome criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  const LocalPlan p = worked_plan();
  const double radius = p.r / p.K;
  const Point w0{0.6 * radius, -0.4 * radius, 0.3 * radius, 0.2 * radius, -0.5 * radius};
  const Trace t = run_local(*sq_l2_scaled(5), w0, p);
  const auto env = check_local_envelope(t, p);
  const auto fit = fit_rate(t);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  const bool inside = t.records.front().row.triple_err <= radius;
  const bool ok = inside && env.passed && t.termination == Termination::tolerance_reached &&
                  fit.rate <= p.L + 0.005 && ms < 1000.0;
  return {ok, "|||x0 - x*||| = " + num(t.records.front().row.triple_err) + " <= r/K = " + num(radius) +
                  ", envelope max ratio " + num(env.max_ratio) + " over " + std::to_string(env.checked) +
                  " steps, fitted rate " + num(fit.rate) + " vs L + 0.005 = " + num(p.L + 0.005) +
                  ", " + num(ms) + " ms"};
}

struct NonsmoothRun {
  GlobalResult result;
  double ms = 0.0;
};

const NonsmoothRun& nonsmooth_run() {
  static const NonsmoothRun run = [] {
    const auto t0 = std::chrono::steady_clock::now();
    GlobalResult g = run_global(*sq_linf(2), Point{2.0, 2.0}, GlobalConfig{});
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return NonsmoothRun{std::move(g), ms};
  }();
  return run;
}

Outcome criterion5() {
  const auto& run = nonsmooth_run();
  const GlobalResult& g = run.result;
  const BasinPlan& b = g.setup.basin_plan;
  const bool phase1 = g.basin.termination == Termination::eta_reached &&
                      static_cast<double>(g.basin.steps()) <= *b.n0_basin &&
                      g.basin.records.back().row.zeta_norm <= b.eta;
  std::string detail = "phase 1: " + std::string(to_string(g.basin.termination)) + " after " +
                       std::to_string(g.basin.steps()) + " steps (bound " + num(*b.n0_basin) +
                       "), |zeta| = " + num(g.basin.records.back().row.zeta_norm) + " <= eta = " + num(b.eta);
  bool phase2 = false;
  if (g.local) {
    const auto fit = fit_rate(*g.local);
    const double final_w = euclid_norm(g.local->records.back().w);
    phase2 = final_w <= 1e-10 && fit.rate <= g.setup.local_plan.L + 0.005;
    detail += "; phase 2: |w| = " + num(final_w) + " after " + std::to_string(g.local->steps()) +
              " steps, fitted rate " + num(fit.rate) + " vs L + 0.005 = " + num(g.setup.local_plan.L + 0.005);
  } else {
    detail += "; phase 2 not run";
  }
  detail += ", " + num(run.ms) + " ms";
  return {phase1 && g.handoff_ok && phase2 && run.ms < 5000.0, detail};
}

Outcome criterion6() {
  const GlobalResult& g = nonsmooth_run().result;
  const auto rep = check_basin_descent(g.basin, g.setup.basin_plan);
  return {rep.passed && rep.checked > 0,
          std::to_string(rep.checked) + " basin steps, largest change " + num(rep.max_ratio) +
              " <= -s + 1e-9 with s = " + num(g.setup.basin_plan.s)};
}

Outcome criterion7() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> beta(0.0, 0.99);

  const AdamParams p{1.0, beta(rng), beta(rng), std::nullopt};
  AdamState x = AdamState::at_rest(Point::zeros(4));
  std::vector<Point> hist;
  for (int k = 0; k < 200; ++k) {
    hist.push_back(random_point(rng, 4, 2.0));
    x = generalized_step(x, hist.back(), 0.01, p);
  }
  const auto [m, v] = moments_closed_form(hist, Point::zeros(4), NonnegPoint::zeros(4), p);
  const double moment_err = std::max(euclid_norm(m - x.m), euclid_norm(v.point() - x.v.point()));

  double hull_err = 0.0;
  for (int k = 0; k < 100; ++k) {
    std::vector<Point> vs;
    for (int i = 0; i < 1 + k % 3; ++i) vs.push_back(random_point(rng, 2, 3.0));
    const double got = euclid_norm(min_norm_point(HullSpec(vs)).point);
    hull_err = std::max(hull_err, std::abs(got - grid_min_norm(vs)));
  }

  std::size_t mismatches = 0;
  for (int k = 0; k < 10000; ++k) {
    const std::size_t n = 1 + k % 5;
    std::vector<double> vv(n);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (auto& c : vv) c = u(rng);
    const AdamState s(random_point(rng, n, 3.0), NonnegPoint(vv), random_point(rng, n, 3.0));
    const Point z = random_point(rng, n, 3.0);
    const AdamParams q{0.01 + beta(rng), beta(rng), beta(rng), 0.1 + beta(rng)};
    const auto idx = static_cast<std::uint64_t>(k % 40);
    const auto r = adam_step(s, z, idx, q);
    const Point sum = gamma_map(s, z, q).w + omega_map(idx, s, z, q);
    for (std::size_t i = 0; i < n; ++i)
      if (std::bit_cast<std::uint64_t>(sum[i]) != std::bit_cast<std::uint64_t>(r.state_after.w[i])) ++mismatches;
  }
  const bool ok = moment_err <= 1e-12 && hull_err <= 1e-3 && mismatches == 0;
  return {ok, "moments max err " + num(moment_err) + ", min-norm vs grid max err " + num(hull_err) +
                  ", decomposition mismatches " + std::to_string(mismatches) + " / 10000"};
}

Outcome criterion8() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto f = sq_l2_scaled(5);
  const LocalPlan p = worked_plan();
  const LocalPlan neg = negative_control_plan(p);
  const auto g = check_gamma_contraction(*f, p, 10000, 101);
  const auto o = check_omega_decay(*f, p, 10000, 100, 102);
  const auto gn = check_gamma_contraction(*f, neg, 10000, 101);
  const auto on = check_omega_decay(*f, neg, 10000, 100, 102);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = g.passed && o.passed && !gn.passed && !on.passed && gn.witness && on.witness && ms < 10000.0;
  return {ok, "certified: gamma max ratio " + num(g.max_ratio) + " <= L0 = " + num(p.L0) +
                  ", omega max ratio " + num(o.max_ratio) + " <= K0 = " + num(p.K0) +
                  "; alpha doubled: " + std::to_string(gn.violations) + " gamma and " +
                  std::to_string(on.violations) + " omega violations, " + num(ms) + " ms"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"constant D = sqrt(11)/4", criterion1},
      {"worked local plan constants", criterion2},
      {"fixed point under 1000 Adam steps", criterion3},
      {"local exponential convergence inside the certified envelope", criterion4},
      {"nonsmooth two-phase convergence on the tie line", criterion5},
      {"basin descent quantum", criterion6},
      {"oracle equivalences", criterion7},
      {"inequality audits with negative controls", criterion8},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    if (!out.pass) ++failures;
    std::printf("%s criterion %d: %s -- %s\n", out.pass ? "PASS" : "FAIL", index, name, out.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
