#pragma once

#include <stdexcept>
#include <string>

namespace polylog {

enum class ErrorCode {
  ConfigNotFound,
  ConfigInvalid,
  Usage,
  SingularPolarization,
  ConventionViolation,
  NotInDualLattice,
  ShellTooLarge,
  BudgetExceeded,
  NotAbsolutelyConvergent,
  ZeroSectionSingularity,
  PoleAtS,
  GridTouchesZeroSection,
  ArityMismatch,
  OutOfRange,
  NotPositiveDefinite,
  TruncationOverflow,
  DimensionOverflow,
  OriginSingularity,
  QuadratureBudget,
  QuadratureUnstable,
};

// Stable upper-snake identifier, used in CLI records.
const char* code_name(ErrorCode c);

// 2 for usage/config/input-domain errors, 1 for computational failures.
int exit_class(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace polylog
