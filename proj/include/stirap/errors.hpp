#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace stirap {

// Precondition violations on physical inputs (negative rates, undefined angles, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// State blew up (NaN/Inf or norm growth past tolerance) during propagation.
class IntegrationDiverged : public std::runtime_error {
 public:
  IntegrationDiverged(std::size_t step, const std::string& what)
      : std::runtime_error(what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// One or more runs of an ensemble diverged; carries the offending run indices.
class EnsembleError : public std::runtime_error {
 public:
  EnsembleError(std::vector<std::size_t> failed_runs, const std::string& what)
      : std::runtime_error(what), failed_runs_(std::move(failed_runs)) {}

  const std::vector<std::size_t>& failed_runs() const noexcept { return failed_runs_; }

 private:
  std::vector<std::size_t> failed_runs_;
};

// Raised by the noise generator when the step rule is enforced as a hard error.
class StepRuleViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace stirap
