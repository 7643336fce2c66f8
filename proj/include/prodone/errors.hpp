#pragma once

#include <stdexcept>
#include <string>

namespace prodone {

// Malformed descriptor, literal, file, or violated precondition.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured budget (states, nodes, order cap) was exhausted.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::string what_budget, std::size_t limit)
        : std::runtime_error(what_budget + " budget exceeded (limit " + std::to_string(limit) + ")"),
          budget_(std::move(what_budget)), limit_(limit) {}
    const std::string& budget() const { return budget_; }
    std::size_t limit() const { return limit_; }

private:
    std::string budget_;
    std::size_t limit_;
};

// An internal consistency check failed; always a bug or a false claim.
class VerificationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace prodone
