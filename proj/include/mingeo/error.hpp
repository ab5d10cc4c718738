#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mingeo {

enum class ErrorCode {
  NonHermitianInput,
  NonUnitaryInput,
  NotPositiveDefinite,
  NotProjection,
  DomainError,
  DimensionMismatch,
  GrassmannTooFar,
  RankMismatch,
  OffSpacePoint,
  ZeroLength,
  EndpointMismatch,
  SpaceMismatch,
  ZeroMatrix,
  IdentityTarget,
  SpeedBudgetExceeded,
  BadStart,
  NormBoundExceeded,
  UniqueGeodesicOnly,
  NoncommutingSystem,
  TrackingAmbiguous,
  PreconditionViolated,
  InvalidArgument,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitianInput: return "NON_HERMITIAN_INPUT";
    case ErrorCode::NonUnitaryInput: return "NON_UNITARY_INPUT";
    case ErrorCode::NotPositiveDefinite: return "NOT_POSITIVE_DEFINITE";
    case ErrorCode::NotProjection: return "NOT_PROJECTION";
    case ErrorCode::DomainError: return "DOMAIN_ERROR";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::GrassmannTooFar: return "GRASSMANN_TOO_FAR";
    case ErrorCode::RankMismatch: return "RANK_MISMATCH";
    case ErrorCode::OffSpacePoint: return "OFF_SPACE_POINT";
    case ErrorCode::ZeroLength: return "ZERO_LENGTH";
    case ErrorCode::EndpointMismatch: return "ENDPOINT_MISMATCH";
    case ErrorCode::SpaceMismatch: return "SPACE_MISMATCH";
    case ErrorCode::ZeroMatrix: return "ZERO_MATRIX";
    case ErrorCode::IdentityTarget: return "IDENTITY_TARGET";
    case ErrorCode::SpeedBudgetExceeded: return "SPEED_BUDGET_EXCEEDED";
    case ErrorCode::BadStart: return "BAD_START";
    case ErrorCode::NormBoundExceeded: return "NORM_BOUND_EXCEEDED";
    case ErrorCode::UniqueGeodesicOnly: return "UNIQUE_GEODESIC_ONLY";
    case ErrorCode::NoncommutingSystem: return "NONCOMMUTING_SYSTEM";
    case ErrorCode::TrackingAmbiguous: return "TRACKING_AMBIGUOUS";
    case ErrorCode::PreconditionViolated: return "PRECONDITION_VIOLATED";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::ParseError: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

/// Input could not be read or does not satisfy the invariant of its declared
/// kind. The CLI maps these to exit status 2; everything else is a
/// precondition failure (exit 3).
constexpr bool is_validation_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitianInput:
    case ErrorCode::NonUnitaryInput:
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::NotProjection:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::OffSpacePoint:
    case ErrorCode::ParseError:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mingeo
