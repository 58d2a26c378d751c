#include "gadam/config.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "gadam/errors.hpp"
#include "gadam/format.hpp"

namespace gadam {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::uint64_t parse_count(std::string_view key, std::string_view text) {
  std::uint64_t out = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument(std::string(key) + ": not a nonnegative integer: '" +
                                std::string(text) + "'");
  }
  return out;
}

double parse_number(std::string_view key, std::string_view text) {
  try {
    return parse_double(text);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(std::string(key) + ": not a number: '" + std::string(text) + "'");
  }
}

std::optional<double> parse_optional(std::string_view key, std::string_view text) {
  if (text == "estimate" || text == "auto") return std::nullopt;
  return parse_number(key, text);
}

std::string optional_text(const std::optional<double>& v, const char* empty) {
  return v ? format_double(*v) : std::string(empty);
}

}  // namespace

void apply_setting(RunConfig& c, std::string_view key_in, std::string_view value_in) {
  const std::string key(trim(key_in));
  const std::string_view value = trim(value_in);
  if (key == "objective") c.objective = std::string(value);
  else if (key == "dim") c.dim = parse_count(key, value);
  else if (key == "norm") c.norm = parse_norm_kind(std::string(value));
  else if (key == "profile") c.profile = std::string(value);
  else if (key == "profile_c") c.profile_c = parse_number(key, value);
  else if (key == "knee") c.knee = parse_number(key, value);
  else if (key == "inner") c.inner = parse_number(key, value);
  else if (key == "outer") c.outer = parse_number(key, value);
  else if (key == "weights") c.weights = value.empty() || value == "[]" ? std::vector<double>{} : parse_vector(value);
  else if (key == "w0") c.w0 = std::string(value);
  else if (key == "delta") c.delta = parse_optional(key, value);
  else if (key == "mu") c.mu = parse_optional(key, value);
  else if (key == "sigma") c.sigma = parse_optional(key, value);
  else if (key == "M") c.M = parse_optional(key, value);
  else if (key == "A") c.A = parse_optional(key, value);
  else if (key == "beta2") c.beta2 = parse_optional(key, value);
  else if (key == "eps") c.eps = parse_number(key, value);
  else if (key == "alpha") {
    AlphaChoice::parse(std::string(value));
    c.alpha = std::string(value);
  }
  else if (key == "R") c.R = parse_number(key, value);
  else if (key == "region_radius") c.region_radius = parse_optional(key, value);
  else if (key == "pair_radius") c.pair_radius = parse_optional(key, value);
  else if (key == "samples") c.samples = parse_count(key, value);
  else if (key == "seed") c.seed = parse_count(key, value);
  else if (key == "beta1s") c.beta1s = parse_optional(key, value);
  else if (key == "beta1s_fraction") c.beta1s_fraction = parse_number(key, value);
  else if (key == "epss") c.epss = parse_optional(key, value);
  else if (key == "eps_margin") c.eps_margin = parse_number(key, value);
  else if (key == "beta2s") c.beta2s = parse_number(key, value);
  else if (key == "tol") c.tol = parse_number(key, value);
  else if (key == "local_step_cap") c.local_step_cap = parse_count(key, value);
  else if (key == "basin_step_cap_max") c.basin_step_cap_max = parse_count(key, value);
  else if (key == "alpha_scale") c.alpha_scale = parse_number(key, value);
  else if (key == "out") c.out = std::string(value);
  else throw std::invalid_argument("unknown config key '" + key + "'");
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    try {
      apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

std::string write_config(const RunConfig& c) {
  std::ostringstream os;
  auto kv = [&os](const char* k, const std::string& v) { os << k << " = " << v << '\n'; };
  kv("objective", c.objective);
  kv("dim", std::to_string(c.dim));
  kv("norm", to_string(c.norm));
  kv("profile", c.profile);
  kv("profile_c", format_double(c.profile_c));
  kv("knee", format_double(c.knee));
  kv("inner", format_double(c.inner));
  kv("outer", format_double(c.outer));
  kv("weights", format_vector(c.weights));
  kv("w0", c.w0);
  kv("delta", optional_text(c.delta, "estimate"));
  kv("mu", optional_text(c.mu, "estimate"));
  kv("sigma", optional_text(c.sigma, "estimate"));
  kv("M", optional_text(c.M, "estimate"));
  kv("A", optional_text(c.A, "auto"));
  kv("beta2", optional_text(c.beta2, "auto"));
  kv("eps", format_double(c.eps));
  kv("alpha", c.alpha);
  kv("R", format_double(c.R));
  kv("region_radius", optional_text(c.region_radius, "auto"));
  kv("pair_radius", optional_text(c.pair_radius, "auto"));
  kv("samples", std::to_string(c.samples));
  kv("seed", std::to_string(c.seed));
  kv("beta1s", optional_text(c.beta1s, "auto"));
  kv("beta1s_fraction", format_double(c.beta1s_fraction));
  kv("epss", optional_text(c.epss, "auto"));
  kv("eps_margin", format_double(c.eps_margin));
  kv("beta2s", format_double(c.beta2s));
  kv("tol", format_double(c.tol));
  kv("local_step_cap", std::to_string(c.local_step_cap));
  kv("basin_step_cap_max", std::to_string(c.basin_step_cap_max));
  kv("alpha_scale", format_double(c.alpha_scale));
  kv("out", c.out);
  return os.str();
}

ObjectivePtr make_objective(const RunConfig& c) {
  if (c.objective.empty()) throw std::invalid_argument("config: objective is required");
  if (c.dim == 0) throw std::invalid_argument("config: dim is required and must be >= 1");
  if (c.objective == "sq_l2_scaled") return sq_l2_scaled(c.dim);
  if (c.objective == "sq_linf") return sq_linf(c.dim);
  if (c.objective == "phi_norm") {
    PhiNormObjective spec;
    if (c.profile == "quadratic") spec.phi = quadratic_profile(c.profile_c);
    else if (c.profile == "kinked") spec.phi = kinked_quadratic_profile(c.knee, c.inner, c.outer);
    else throw std::invalid_argument("config: unknown profile '" + c.profile + "'");
    spec.norm = c.norm;
    spec.dim = c.dim;
    spec.weights = c.weights;
    return phi_norm_objective(std::move(spec));
  }
  throw std::invalid_argument("config: unknown objective '" + c.objective + "'");
}

Point resolve_w0(const RunConfig& c, const Objective& oracle, const LocalPlan* plan) {
  const std::size_t n = oracle.dim();
  const Point center = oracle.minimizer().value_or(Point::zeros(n));
  std::vector<double> offset(n, 0.0);
  if (c.w0 == "zero") {
  } else if (c.w0 == "ones") {
    offset.assign(n, 1.0);
  } else if (c.w0 == "e1") {
    offset[0] = 1.0;
  } else if (c.w0 == "inside") {
    if (!plan) throw std::invalid_argument("w0 = inside needs a local plan");
    offset[0] = 0.5 * plan->r / (plan->K * plan->A);
  } else {
    const auto explicit_w0 = parse_vector(c.w0);
    require_same_dim(explicit_w0.size(), n, "w0");
    return Point(explicit_w0);
  }
  return center + Point(std::move(offset));
}

GlobalConfig to_global_config(const RunConfig& c) {
  GlobalConfig g;
  g.delta = c.delta;
  g.mu = c.mu;
  g.sigma = c.sigma;
  g.M = c.M;
  g.A = c.A;
  g.beta2 = c.beta2;
  g.eps = c.eps;
  g.alpha = AlphaChoice::parse(c.alpha);
  g.R = c.R;
  g.region_radius = c.region_radius;
  g.pair_radius = c.pair_radius;
  g.growth_samples = c.samples;
  g.pair_samples = c.samples;
  g.seed = c.seed;
  g.beta1s = c.beta1s;
  g.beta1s_fraction = c.beta1s_fraction;
  g.epss = c.epss;
  g.eps_margin = c.eps_margin;
  g.beta2s = c.beta2s;
  g.tol = c.tol;
  g.local_step_cap = c.local_step_cap;
  g.basin_step_cap_max = c.basin_step_cap_max;
  return g;
}

LocalPlan local_plan_for(const RunConfig& c, const Objective& oracle) {
  const GlobalConfig g = to_global_config(c);
  LocalPlanRequest req;
  req.A = c.A;
  req.eps = c.eps;
  req.beta2 = c.beta2;
  req.alpha = g.alpha;
  req.R = c.R;
  if (c.delta && c.mu) {
    req.delta = *c.delta;
    req.mu = *c.mu;
  } else {
    const auto w_star = oracle.minimizer();
    if (!w_star) throw std::invalid_argument("estimating delta, mu needs a declared minimizer");
    const HypothesisEstimate est = estimate_growth(oracle, *w_star, c.R, c.samples, c.seed);
    if (!est.hypothesis_ok) throw InfeasibleError("delta > 0", est.note);
    req.delta = c.delta ? *c.delta : est.delta_hat * g.delta_safety;
    req.mu = c.mu ? *c.mu : est.mu_hat * g.mu_safety;
  }
  return plan_local(req);
}

}  // namespace gadam
