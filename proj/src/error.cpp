#include "splinepdf/error.hpp"

namespace splinepdf {

std::string_view to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::DegenerateDispersion: return "DegenerateDispersion";
    case ErrorCode::ZeroRange: return "ZeroRange";
    case ErrorCode::InvalidBinRule: return "InvalidBinRule";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DegreeNegative: return "DegreeNegative";
    case ErrorCode::DegreeTooLow: return "DegreeTooLow";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::NonMonotoneKnots: return "NonMonotoneKnots";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::OutOfSupport: return "OutOfSupport";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::TooFewBins: return "TooFewBins";
    case ErrorCode::DisjointSupports: return "DisjointSupports";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
    case ErrorCode::InvalidRanges: return "InvalidRanges";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

} // namespace splinepdf
