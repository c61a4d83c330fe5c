#pragma once

#include <stdexcept>
#include <string>

namespace rfg {

/// Invalid input: violated precondition, malformed argument, mixed rings.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The element is trivial, so no quotient can detect it.
class Undetectable : public DomainError {
public:
  using DomainError::DomainError;
};

/// A search exhausted its configured range without an answer.
class LimitExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed its element budget.
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace rfg
