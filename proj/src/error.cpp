#include "hypcone/error.hpp"

namespace hypcone {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ParabolicOrIdentity: return "ParabolicOrIdentity";
    case ErrorKind::NoAxis: return "NoAxis";
    case ErrorKind::NotElliptic: return "NotElliptic";
    case ErrorKind::UnsupportedCurvature: return "UnsupportedCurvature";
    case ErrorKind::NoRealizableRoot: return "NoRealizableRoot";
    case ErrorKind::DegenerateSubstitution: return "DegenerateSubstitution";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::NoDegenerationFound: return "NoDegenerationFound";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::AngleAbovePi: return "AngleAbovePi";
  }
  return "Unknown";
}

}  // namespace hypcone
