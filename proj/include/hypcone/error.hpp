#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypcone {

enum class ErrorKind {
  InvalidInput,
  DomainError,
  ParabolicOrIdentity,
  NoAxis,
  NotElliptic,
  UnsupportedCurvature,
  NoRealizableRoot,
  DegenerateSubstitution,
  QuadratureFailure,
  NoDegenerationFound,
  BudgetExceeded,
  AngleAbovePi,
};

std::string_view to_string(ErrorKind kind);

/// Library-wide exception. `field` names the offending input when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string field = {})
      : std::runtime_error(message), kind_(kind), field_(std::move(field)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::string field_;
};

}  // namespace hypcone
