#include "fracpm/error.hpp"

namespace fracpm {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::VerifyFailure:
      return 1;
    case ErrorKind::ExcludedParameter:
      return 3;
    case ErrorKind::BlowUp:
      return 4;
    case ErrorKind::LinearAlgebra:
      return 5;
    case ErrorKind::InvalidArgument:
    case ErrorKind::NonFinite:
    case ErrorKind::Config:
    case ErrorKind::Geometry:
    case ErrorKind::Tolerance:
      return 2;
  }
  return 2;
}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::NonFinite: return "non-finite value";
    case ErrorKind::Config: return "configuration error";
    case ErrorKind::Geometry: return "geometry error";
    case ErrorKind::ExcludedParameter: return "excluded parameter";
    case ErrorKind::BlowUp: return "blow-up";
    case ErrorKind::LinearAlgebra: return "linear algebra failure";
    case ErrorKind::Tolerance: return "tolerance unreachable";
    case ErrorKind::VerifyFailure: return "verification failure";
  }
  return "unknown";
}

}  // namespace fracpm
