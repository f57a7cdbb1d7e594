#pragma once

#include <stdexcept>

namespace nieval {

// Malformed input or an argument outside an operation's contract. The CLI
// maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Well-formed input for which the requested quantity does not exist (zero
// target entropy, parameters outside a case's reachable range). The CLI maps
// this to exit code 3.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace nieval
