#pragma once

#include <stdexcept>
#include <string>

namespace ybt {

enum class Errc {
  DimensionMismatch,
  DimensionNotASquare,
  StateSpaceTooLarge,
  NotAGenerator,
  ReducibleChain,
  InvalidParameters,
  InvalidDeformation,
  DeformationMismatch,
  RateOutOfRange,
  PoleAtQZEqualsOne,
  EvaluationPole,
  PoleInDenominator,
  NotRegular,
  SingularGauge,
  ZeroEntryInGroundState,
  NotAnEigenvector,
  NegativeOffDiagonal,
  ContourHitsPole,
  NonConvergedQuadrature,
  WindowTooSmall,
  InconsistentBoundary,
  PoleAtZEqualsQPower,
  PoleInSpectralLadder,
  PoleInPochhammer,
  InvalidTruncation,
  ZeroLeadingRate,
  TruncationNotConverged,
  NegativeWeight,
  NonTerminatingDivergent,
  PoleInLowerParameters,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ybt
