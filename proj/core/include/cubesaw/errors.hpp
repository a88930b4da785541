#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cubesaw {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An enumeration would exceed the configured node budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, long double estimated, std::uint64_t budget)
      : std::runtime_error(what), estimated_(estimated), budget_(budget) {}

  long double estimated() const noexcept { return estimated_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  long double estimated_;
  std::uint64_t budget_;
};

/// An internal invariant failed. Indicates a bug or a corrupted input table.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cubesaw
