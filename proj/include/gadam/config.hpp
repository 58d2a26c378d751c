#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gadam/driver.hpp"
#include "gadam/objectives.hpp"
#include "gadam/planner.hpp"

namespace gadam {

/// Everything a run needs. Empty optionals are written as "estimate" (constants that
/// can be sampled) or "auto" (values derived from other settings).
struct RunConfig {
  /// "sq_l2_scaled", "sq_linf" or "phi_norm".
  std::string objective;
  std::size_t dim = 0;
  NormKind norm = NormKind::euclid;
  /// phi_norm profile: "quadratic" (c r^2) or "kinked".
  std::string profile = "quadratic";
  double profile_c = 1.0;
  double knee = 0.5;
  double inner = 1.0;
  double outer = 2.0;
  std::vector<double> weights;

  /// Explicit vector or a preset: "zero", "ones", "e1", "inside" (on the e1 axis at
  /// half the r/K radius of the local plan).
  std::string w0 = "ones";

  std::optional<double> delta;
  std::optional<double> mu;
  std::optional<double> sigma;
  std::optional<double> M;
  std::optional<double> A;
  std::optional<double> beta2;
  double eps = 1.0;
  std::string alpha = "upper";
  double R = 1.0;
  std::optional<double> region_radius;
  std::optional<double> pair_radius;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;

  std::optional<double> beta1s;
  double beta1s_fraction = 0.5;
  std::optional<double> epss;
  double eps_margin = 2.0;
  double beta2s = 0.5;

  double tol = 1e-10;
  std::uint64_t local_step_cap = 100000;
  std::uint64_t basin_step_cap_max = 1000000;
  /// Multiplies the planned alpha of local runs without re-planning; 1 keeps the certificate.
  double alpha_scale = 1.0;

  std::string out = "trace.csv";

  bool operator==(const RunConfig&) const = default;
};

/// Sets one field from its text form; throws std::invalid_argument on unknown keys
/// or malformed values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// `key = value` lines; '#' starts a comment.
RunConfig parse_config(std::string_view text, RunConfig base = {});
std::string write_config(const RunConfig& config);

/// Throws std::invalid_argument when objective or dim is missing or invalid.
ObjectivePtr make_objective(const RunConfig& config);

/// Preset "inside" needs `plan`.
Point resolve_w0(const RunConfig& config, const Objective& oracle,
                 const LocalPlan* plan = nullptr);

GlobalConfig to_global_config(const RunConfig& config);

/// Local plan from explicit delta and mu or, when either is empty, from the same
/// estimates a global run uses.
LocalPlan local_plan_for(const RunConfig& config, const Objective& oracle);

}  // namespace gadam
