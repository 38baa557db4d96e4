#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fnls {

// Malformed structure: wrong dimensions, invalid parameters, impossible requests.
struct StructuralError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input outside the mathematical domain (non-finite components and the like).
struct InputDomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A user-supplied evaluator broke its contract (value outside [0,1], non-finite output).
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// Bad configuration; carries the location of the offending field.
struct ConfigError : std::runtime_error {
  std::string where;
  ConfigError(std::string where_, const std::string& what_)
      : std::runtime_error(what_ + " (at " + where_ + ")"), where(std::move(where_)) {}
};

}  // namespace fnls
