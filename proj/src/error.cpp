#include "arcparam/error.hpp"

namespace arcparam {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::OverlappingArcs: return "OverlappingArcs";
    case ErrorCode::DegenerateArc: return "DegenerateArc";
    case ErrorCode::AsymmetricArcSet: return "AsymmetricArcSet";
    case ErrorCode::PointOneInsideE: return "PointOneInsideE";
    case ErrorCode::PoleEncountered: return "PoleEncountered";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::RefPointNotInGap: return "RefPointNotInGap";
    case ErrorCode::ExtremalFunction: return "ExtremalFunction";
    case ErrorCode::ParamOutOfDisk: return "ParamOutOfDisk";
    case ErrorCode::PoleAtConjZeta0: return "PoleAtConjZeta0";
    case ErrorCode::NormalizationVanishes: return "NormalizationVanishes";
    case ErrorCode::WrongGapCount: return "WrongGapCount";
    case ErrorCode::PointOffGap: return "PointOffGap";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::PositivityViolation: return "PositivityViolation";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotImaginaryAtRef: return "NotImaginaryAtRef";
    case ErrorCode::RefIsPole: return "RefIsPole";
    case ErrorCode::NegativeDensity: return "NegativeDensity";
    case ErrorCode::NegativeMass: return "NegativeMass";
    case ErrorCode::MassDeficit: return "MassDeficit";
    case ErrorCode::MeasureTooThin: return "MeasureTooThin";
    case ErrorCode::NormCollapse: return "NormCollapse";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string module, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + " [" + module + "]: " + what),
      code_(code),
      module_(std::move(module)) {}

}  // namespace arcparam
