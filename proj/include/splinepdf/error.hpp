#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace splinepdf {

enum class ErrorCode
{
  EmptyInput,
  NonFiniteInput,
  InvalidWeights,
  DegenerateDispersion,
  ZeroRange,
  InvalidBinRule,
  CountMismatch,
  IndexOutOfRange,
  DegreeNegative,
  DegreeTooLow,
  TooFewPoints,
  NonMonotoneKnots,
  SingularSystem,
  OutOfSupport,
  NotNormalized,
  TooFewBins,
  DisjointSupports,
  InvalidArgument,
  InvalidScenario,
  InvalidRanges,
  IoError,
  ParseError,
  UsageError
};

std::string_view to_string(ErrorCode code);

//! Exception carrying a machine-readable error category.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string& what)
    : std::runtime_error(what)
    , code_(code)
  {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace splinepdf
