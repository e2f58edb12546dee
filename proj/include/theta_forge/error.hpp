#ifndef THETA_FORGE_ERROR_HPP
#define THETA_FORGE_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace theta_forge {

enum class ErrorCode {
  // input errors
  SYNTAX_ERROR,
  UNDECLARED_VARIABLE,
  NEGATIVE_EXPONENT,
  NOT_SQUARE,
  SHAPE_MISMATCH,
  RING_MISMATCH,
  COEFF_DOMAIN_NOT_FIELD,
  MF_IDENTITY_FAILED,
  INHOMOGENEOUS_ENTRY,
  NO_CONSISTENT_TWISTS,
  F_NOT_HOMOGENEOUS,
  F_MISMATCH,
  SINGULAR_MATRIX,
  INHOMOGENEOUS_INPUT,
  SPEC_MALFORMED,
  // violated mathematical hypotheses
  NONFINITE_TOR,
  NONFINITE_EXT,
  INFINITE_LENGTH,
  NOT_ISOLATED,
  SOCLE_DEGENERATE,
  NOT_STABILIZED,
  INVALID_FIBER,
  // results that would contradict the theory
  NONCONSTANT,
  VIOLATION,
};

constexpr std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::SYNTAX_ERROR: return "SYNTAX_ERROR";
    case ErrorCode::UNDECLARED_VARIABLE: return "UNDECLARED_VARIABLE";
    case ErrorCode::NEGATIVE_EXPONENT: return "NEGATIVE_EXPONENT";
    case ErrorCode::NOT_SQUARE: return "NOT_SQUARE";
    case ErrorCode::SHAPE_MISMATCH: return "SHAPE_MISMATCH";
    case ErrorCode::RING_MISMATCH: return "RING_MISMATCH";
    case ErrorCode::COEFF_DOMAIN_NOT_FIELD: return "COEFF_DOMAIN_NOT_FIELD";
    case ErrorCode::MF_IDENTITY_FAILED: return "MF_IDENTITY_FAILED";
    case ErrorCode::INHOMOGENEOUS_ENTRY: return "INHOMOGENEOUS_ENTRY";
    case ErrorCode::NO_CONSISTENT_TWISTS: return "NO_CONSISTENT_TWISTS";
    case ErrorCode::F_NOT_HOMOGENEOUS: return "F_NOT_HOMOGENEOUS";
    case ErrorCode::F_MISMATCH: return "F_MISMATCH";
    case ErrorCode::SINGULAR_MATRIX: return "SINGULAR_MATRIX";
    case ErrorCode::INHOMOGENEOUS_INPUT: return "INHOMOGENEOUS_INPUT";
    case ErrorCode::SPEC_MALFORMED: return "SPEC_MALFORMED";
    case ErrorCode::NONFINITE_TOR: return "NONFINITE_TOR";
    case ErrorCode::NONFINITE_EXT: return "NONFINITE_EXT";
    case ErrorCode::INFINITE_LENGTH: return "INFINITE_LENGTH";
    case ErrorCode::NOT_ISOLATED: return "NOT_ISOLATED";
    case ErrorCode::SOCLE_DEGENERATE: return "SOCLE_DEGENERATE";
    case ErrorCode::NOT_STABILIZED: return "NOT_STABILIZED";
    case ErrorCode::INVALID_FIBER: return "INVALID_FIBER";
    case ErrorCode::NONCONSTANT: return "NONCONSTANT";
    case ErrorCode::VIOLATION: return "VIOLATION";
  }
  return "UNKNOWN";
}

/// Which class of failure an error belongs to; the CLI maps these to exit codes.
enum class ErrorClass { Input, Hypothesis, Contradiction };

constexpr ErrorClass classify(ErrorCode c) {
  switch (c) {
    case ErrorCode::NONFINITE_TOR:
    case ErrorCode::NONFINITE_EXT:
    case ErrorCode::INFINITE_LENGTH:
    case ErrorCode::NOT_ISOLATED:
    case ErrorCode::SOCLE_DEGENERATE:
    case ErrorCode::NOT_STABILIZED:
    case ErrorCode::INVALID_FIBER:
      return ErrorClass::Hypothesis;
    case ErrorCode::NONCONSTANT:
    case ErrorCode::VIOLATION:
      return ErrorClass::Contradiction;
    default:
      return ErrorClass::Input;
  }
}

struct SourcePosition {
  int line = 1;
  int column = 1;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<SourcePosition> pos = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        detail_(what),
        pos_(pos) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::optional<SourcePosition>& position() const noexcept { return pos_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::optional<SourcePosition> pos_;
};

}  // namespace theta_forge

#endif  // THETA_FORGE_ERROR_HPP
