#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arcparam {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  // arcset
  OverlappingArcs,
  DegenerateArc,
  AsymmetricArcSet,
  PointOneInsideE,
  // moebius
  PoleEncountered,
  NotNormalized,
  RefPointNotInGap,
  // schur
  ExtremalFunction,
  ParamOutOfDisk,
  // hardy0
  PoleAtConjZeta0,
  NormalizationVanishes,
  // curve
  WrongGapCount,
  PointOffGap,
  // mfunc
  SingularSystem,
  PositivityViolation,
  NoConvergence,
  NotImaginaryAtRef,
  RefIsPole,
  // measure
  NegativeDensity,
  NegativeMass,
  MassDeficit,
  // opuc
  MeasureTooThin,
  NormCollapse,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. Carries the failing module name so front ends can
/// report provenance.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& what);

  ErrorCode code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorCode code_;
  std::string module_;
};

}  // namespace arcparam
