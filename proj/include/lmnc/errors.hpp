#pragma once

// Error vocabulary shared by the whole library.  Each code belongs to one of
// three categories which the command-line driver maps onto process exit
// codes: invalid input -> 2, scale guard -> 3, failed internal check -> 1.

#include <stdexcept>
#include <string>

namespace lmnc {

enum class ErrorCode {
  not_prime,
  even_characteristic,
  degenerate_degree,
  not_a_unit,
  divisibility_violation,
  too_large,
  epsilon_mismatch,
  classification_mismatch,
  invariant_violation,
  page_mismatch,
  bad_argument,
};

enum class ErrorCategory {
  invalid_input,    // caller handed us parameters outside the domain
  scale_guard,      // request is well-formed but exceeds the size envelope
  internal_check,   // a cross-check the library performs on itself failed
};

constexpr ErrorCategory category_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_prime:
    case ErrorCode::even_characteristic:
    case ErrorCode::degenerate_degree:
    case ErrorCode::not_a_unit:
    case ErrorCode::bad_argument:
      return ErrorCategory::invalid_input;
    case ErrorCode::too_large:
      return ErrorCategory::scale_guard;
    case ErrorCode::divisibility_violation:
    case ErrorCode::epsilon_mismatch:
    case ErrorCode::classification_mismatch:
    case ErrorCode::invariant_violation:
    case ErrorCode::page_mismatch:
      return ErrorCategory::internal_check;
  }
  return ErrorCategory::internal_check;
}

constexpr const char* name_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_prime: return "not_prime";
    case ErrorCode::even_characteristic: return "even_characteristic";
    case ErrorCode::degenerate_degree: return "degenerate_degree";
    case ErrorCode::not_a_unit: return "not_a_unit";
    case ErrorCode::divisibility_violation: return "divisibility_violation";
    case ErrorCode::too_large: return "too_large";
    case ErrorCode::epsilon_mismatch: return "epsilon_mismatch";
    case ErrorCode::classification_mismatch: return "classification_mismatch";
    case ErrorCode::invariant_violation: return "invariant_violation";
    case ErrorCode::page_mismatch: return "page_mismatch";
    case ErrorCode::bad_argument: return "bad_argument";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(name_of(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }
  ErrorCategory category() const { return category_of(code_); }

 private:
  ErrorCode code_;
};

// Convenience guard used throughout: throw a categorized error when a
// precondition fails.
inline void require(bool ok, ErrorCode code, const std::string& message) {
  if (!ok) throw Error(code, message);
}

}  // namespace lmnc
