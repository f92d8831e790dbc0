#pragma once

#include <stdexcept>
#include <string>

namespace odot {

enum class ErrorKind {
  invalid_element,
  boundary_mismatch,
  not_round,
  dimension_mismatch,
  not_rewritable,
  wrong_dimension,
  precondition,
  no_least_element,
  parse,
  budget_exhausted,
  io,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

class BudgetExceeded : public Error {
public:
  explicit BudgetExceeded(const std::string& what) : Error(ErrorKind::budget_exhausted, what) {}
};

}  // namespace odot
