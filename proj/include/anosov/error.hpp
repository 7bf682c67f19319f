#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace anosov {

enum class ErrorCode {
  // symspace
  NotSymmetric,
  NotPositiveDefinite,
  DimensionMismatch,
  DegeneratePairing,
  DegenerateForm,
  IdenticalPoints,
  ZeroVector,
  EmptySubspace,
  NotTimelike,
  IdenticalLines,
  // groups
  ParseError,
  SingularGenerator,
  DeterminantNotUnit,
  BallTooLarge,
  UnknownFixture,
  PingPongFailed,
  RadiusTooSmall,
  // certify
  EmptySample,
  NoGap,
  NotGeodesic,
  // domains
  LpStall,
  NoWitnesses,
  TransversalityFailure,
  DimensionUnsupported,
  // cli
  UsageError,
  IoError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace anosov
