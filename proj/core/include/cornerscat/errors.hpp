#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cornerscat {

/// Invalid physical or run configuration (bad Lamé pair, rho0 == 1, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller broke a documented precondition.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An operation was invoked without the data its contract requires.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Iterative solver gave up. Carries the relative residual after each iteration.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what, std::vector<double> history = {})
      : std::runtime_error(what), residual_history_(std::move(history)) {}

  const std::vector<double>& residual_history() const noexcept { return residual_history_; }

 private:
  std::vector<double> residual_history_;
};

}  // namespace cornerscat
