#include "diii/error.hpp"

namespace diii {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotSkewSymmetric: return "NotSkewSymmetric";
    case ErrorCode::NotSkewUnitary: return "NotSkewUnitary";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::OddTotalDimension: return "OddTotalDimension";
    case ErrorCode::OddSewingRank: return "OddSewingRank";
    case ErrorCode::UnequalChiralEigenspaces: return "UnequalChiralEigenspaces";
    case ErrorCode::NotInCommutant: return "NotInCommutant";
    case ErrorCode::NotStandardForm: return "NotStandardForm";
    case ErrorCode::SewingViolation: return "SewingViolation";
    case ErrorCode::NotEquivariant: return "NotEquivariant";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::BadStartValue: return "BadStartValue";
    case ErrorCode::OddN: return "OddN";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::BandwidthTooLarge: return "BandwidthTooLarge";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::BadGrid: return "BadGrid";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SingularInput: return "SingularInput";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::NonzeroWinding: return "NonzeroWinding";
    case ErrorCode::NonzeroDetWinding: return "NonzeroDetWinding";
    case ErrorCode::InconsistentUnwrap: return "InconsistentUnwrap";
    case ErrorCode::BranchFailure: return "BranchFailure";
    case ErrorCode::CrossCheckFailure: return "CrossCheckFailure";
    case ErrorCode::NotSignLike: return "NotSignLike";
    case ErrorCode::Unstable: return "Unstable";
    case ErrorCode::IndexMismatch: return "IndexMismatch";
    case ErrorCode::Uncertified: return "Uncertified";
  }
  return "Unknown";
}

ErrorClass error_class(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OddN:
    case ErrorCode::TooSmall:
    case ErrorCode::BandwidthTooLarge:
    case ErrorCode::UnknownModel:
    case ErrorCode::BadGrid:
    case ErrorCode::InvalidArgument:
    case ErrorCode::RankMismatch:
    case ErrorCode::GridMismatch:
    case ErrorCode::DimensionMismatch:
      return ErrorClass::Usage;
    case ErrorCode::ParseError:
      return ErrorClass::Parse;
    case ErrorCode::SingularInput:
    case ErrorCode::NoConvergence:
    case ErrorCode::GridTooCoarse:
    case ErrorCode::NonzeroWinding:
    case ErrorCode::NonzeroDetWinding:
    case ErrorCode::InconsistentUnwrap:
    case ErrorCode::BranchFailure:
    case ErrorCode::CrossCheckFailure:
    case ErrorCode::NotSignLike:
    case ErrorCode::Unstable:
    case ErrorCode::IndexMismatch:
    case ErrorCode::Uncertified:
      return ErrorClass::Numerical;
    default:
      return ErrorClass::Validation;
  }
}

Error::Error(ErrorCode code, const std::string& detail, double residual,
             std::int64_t index)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      residual_(residual),
      index_(index) {}

}  // namespace diii
