#pragma once

#include <stdexcept>
#include <string>

namespace gadam {

/// A parameter choice violates a constraint the convergence guarantees rely on.
/// `constraint()` names the violated inequality, e.g. "0 < delta <= mu".
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(std::string constraint, const std::string& detail)
      : std::runtime_error("infeasible: " + constraint + " (" + detail + ")"),
        constraint_(std::move(constraint)) {}

  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

/// The objective cannot produce a value or a generalized-gradient selection.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gadam
