#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace quivermod {

/// Malformed input: bad indices, shape or field mismatches, violated preconditions.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive search would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::string budget_name, std::uint64_t required, std::uint64_t limit)
      : std::runtime_error("budget '" + budget_name + "' exceeded: need " +
                           std::to_string(required) + ", limit " + std::to_string(limit)),
        budget_name_(std::move(budget_name)),
        required_(required),
        limit_(limit) {}

  const std::string& budget_name() const noexcept { return budget_name_; }
  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::string budget_name_;
  std::uint64_t required_;
  std::uint64_t limit_;
};

}  // namespace quivermod
