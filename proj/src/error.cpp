#include "phaselab/error.hpp"

namespace phaselab {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NonPositiveIntensity: return "NonPositiveIntensity";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::TooFewSlices: return "TooFewSlices";
    case ErrorCode::NonUniformZ: return "NonUniformZ";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::ZeroDiagonal: return "ZeroDiagonal";
    case ErrorCode::InterpolationOutOfDomain: return "InterpolationOutOfDomain";
    case ErrorCode::BlowUp: return "BlowUp";
    case ErrorCode::NonPositivePsi: return "NonPositivePsi";
    case ErrorCode::StepRejected: return "StepRejected";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace phaselab
