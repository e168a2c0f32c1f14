#include "polylog/error.hpp"

namespace polylog {

const char* code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ConfigNotFound: return "CONFIG_NOT_FOUND";
    case ErrorCode::ConfigInvalid: return "CONFIG_INVALID";
    case ErrorCode::Usage: return "USAGE";
    case ErrorCode::SingularPolarization: return "SINGULAR_POLARIZATION";
    case ErrorCode::ConventionViolation: return "CONVENTION_VIOLATION";
    case ErrorCode::NotInDualLattice: return "NOT_IN_DUAL_LATTICE";
    case ErrorCode::ShellTooLarge: return "SHELL_TOO_LARGE";
    case ErrorCode::BudgetExceeded: return "BUDGET_EXCEEDED";
    case ErrorCode::NotAbsolutelyConvergent: return "NOT_ABSOLUTELY_CONVERGENT";
    case ErrorCode::ZeroSectionSingularity: return "ZERO_SECTION_SINGULARITY";
    case ErrorCode::PoleAtS: return "POLE_AT_S";
    case ErrorCode::GridTouchesZeroSection: return "GRID_TOUCHES_ZERO_SECTION";
    case ErrorCode::ArityMismatch: return "ARITY_MISMATCH";
    case ErrorCode::OutOfRange: return "OUT_OF_RANGE";
    case ErrorCode::NotPositiveDefinite: return "NOT_POSITIVE_DEFINITE";
    case ErrorCode::TruncationOverflow: return "TRUNCATION_OVERFLOW";
    case ErrorCode::DimensionOverflow: return "DIMENSION_OVERFLOW";
    case ErrorCode::OriginSingularity: return "ORIGIN_SINGULARITY";
    case ErrorCode::QuadratureBudget: return "QUADRATURE_BUDGET";
    case ErrorCode::QuadratureUnstable: return "QUADRATURE_UNSTABLE";
  }
  return "UNKNOWN";
}

int exit_class(ErrorCode c) {
  switch (c) {
    case ErrorCode::ShellTooLarge:
    case ErrorCode::BudgetExceeded:
    case ErrorCode::TruncationOverflow:
    case ErrorCode::DimensionOverflow:
    case ErrorCode::QuadratureBudget:
    case ErrorCode::QuadratureUnstable:
      return 1;
    default:
      return 2;
  }
}

}  // namespace polylog
