#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace diii {

/// Every failure the library can report. Grouped by the class of problem so
/// that front ends can map them onto exit codes (see error_class()).
enum class ErrorCode {
  // input validation
  NotHermitian,
  NotSkewSymmetric,
  NotSkewUnitary,
  NotUnitary,
  DimensionMismatch,
  OddDimension,
  OddTotalDimension,
  OddSewingRank,
  UnequalChiralEigenspaces,
  NotInCommutant,
  NotStandardForm,
  SewingViolation,
  NotEquivariant,
  RankMismatch,
  GridMismatch,
  BadStartValue,
  // usage
  OddN,
  TooSmall,
  BandwidthTooLarge,
  UnknownModel,
  BadGrid,
  InvalidArgument,
  // parsing
  ParseError,
  // numerical health
  SingularInput,
  NoConvergence,
  GridTooCoarse,
  NonzeroWinding,
  NonzeroDetWinding,
  InconsistentUnwrap,
  BranchFailure,
  CrossCheckFailure,
  NotSignLike,
  Unstable,
  IndexMismatch,
  Uncertified,
};

enum class ErrorClass { Validation, Usage, Parse, Numerical };

const char* to_string(ErrorCode code) noexcept;
ErrorClass error_class(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail,
        double residual = std::numeric_limits<double>::quiet_NaN(),
        std::int64_t index = -1);

  ErrorCode code() const noexcept { return code_; }
  /// Offending residual or measured value, NaN when not applicable.
  double residual() const noexcept { return residual_; }
  /// Offending grid index, -1 when not applicable.
  std::int64_t index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  double residual_;
  std::int64_t index_;
};

}  // namespace diii
