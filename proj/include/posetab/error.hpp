#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace posetab {

enum class ErrorKind {
  Cycle,
  Degree,
  DuplicateId,
  UnknownId,
  NoArrow,
  EmptyPoset,
  Mismatch,
  AmbientMismatch,
  NotWellDefined,
  Diamond,
  MissingData,
  NotNatural,
  VariantMismatch,
  FamilyMismatch,
  Schema,
  Validation,
  ConvergenceViolation,
  OracleViolation,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` distinguishes the error
/// classes. Oracle and convergence violations mean a bug, everything else
/// means bad input.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string pointer = {})
      : std::runtime_error(message), kind_(kind), pointer_(std::move(pointer)) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// JSON pointer into the input document, when the error came from parsing.
  const std::string& pointer() const noexcept { return pointer_; }

  bool is_bug() const noexcept {
    return kind_ == ErrorKind::ConvergenceViolation || kind_ == ErrorKind::OracleViolation;
  }

 private:
  ErrorKind kind_;
  std::string pointer_;
};

}  // namespace posetab
