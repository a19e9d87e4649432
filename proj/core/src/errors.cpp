#include "ybt/errors.hpp"

namespace ybt {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DimensionNotASquare: return "DimensionNotASquare";
    case Errc::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case Errc::NotAGenerator: return "NotAGenerator";
    case Errc::ReducibleChain: return "ReducibleChain";
    case Errc::InvalidParameters: return "InvalidParameters";
    case Errc::InvalidDeformation: return "InvalidDeformation";
    case Errc::DeformationMismatch: return "DeformationMismatch";
    case Errc::RateOutOfRange: return "RateOutOfRange";
    case Errc::PoleAtQZEqualsOne: return "PoleAtQZEqualsOne";
    case Errc::EvaluationPole: return "EvaluationPole";
    case Errc::PoleInDenominator: return "PoleInDenominator";
    case Errc::NotRegular: return "NotRegular";
    case Errc::SingularGauge: return "SingularGauge";
    case Errc::ZeroEntryInGroundState: return "ZeroEntryInGroundState";
    case Errc::NotAnEigenvector: return "NotAnEigenvector";
    case Errc::NegativeOffDiagonal: return "NegativeOffDiagonal";
    case Errc::ContourHitsPole: return "ContourHitsPole";
    case Errc::NonConvergedQuadrature: return "NonConvergedQuadrature";
    case Errc::WindowTooSmall: return "WindowTooSmall";
    case Errc::InconsistentBoundary: return "InconsistentBoundary";
    case Errc::PoleAtZEqualsQPower: return "PoleAtZEqualsQPower";
    case Errc::PoleInSpectralLadder: return "PoleInSpectralLadder";
    case Errc::PoleInPochhammer: return "PoleInPochhammer";
    case Errc::InvalidTruncation: return "InvalidTruncation";
    case Errc::ZeroLeadingRate: return "ZeroLeadingRate";
    case Errc::TruncationNotConverged: return "TruncationNotConverged";
    case Errc::NegativeWeight: return "NegativeWeight";
    case Errc::NonTerminatingDivergent: return "NonTerminatingDivergent";
    case Errc::PoleInLowerParameters: return "PoleInLowerParameters";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

}  // namespace ybt
