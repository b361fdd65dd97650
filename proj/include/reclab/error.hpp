#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace reclab {

enum class Errc {
  InvalidPrime,
  PrimeMismatch,
  NotAUnit,
  NotDivisible,
  NoSolution,
  ConstructionFailed,
  UnsupportedPrime,
  PrecisionTooLow,
  PrecisionTooHigh,
  ParamsMismatch,
  NotInBaseField,
  NotInMaximalIdeal,
  ExpDiverges,
  TruncationTooSmall,
  ConvergenceStall,
  NoUnitCandidate,
  SigmaVarianceDetected,
  NoRootInM,
  NotTorsion,
  DenominatorDegenerate,
  ParseError,
};

constexpr std::string_view errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::InvalidPrime: return "InvalidPrime";
    case Errc::PrimeMismatch: return "PrimeMismatch";
    case Errc::NotAUnit: return "NotAUnit";
    case Errc::NotDivisible: return "NotDivisible";
    case Errc::NoSolution: return "NoSolution";
    case Errc::ConstructionFailed: return "ConstructionFailed";
    case Errc::UnsupportedPrime: return "UnsupportedPrime";
    case Errc::PrecisionTooLow: return "PrecisionTooLow";
    case Errc::PrecisionTooHigh: return "PrecisionTooHigh";
    case Errc::ParamsMismatch: return "ParamsMismatch";
    case Errc::NotInBaseField: return "NotInBaseField";
    case Errc::NotInMaximalIdeal: return "NotInMaximalIdeal";
    case Errc::ExpDiverges: return "ExpDiverges";
    case Errc::TruncationTooSmall: return "TruncationTooSmall";
    case Errc::ConvergenceStall: return "ConvergenceStall";
    case Errc::NoUnitCandidate: return "NoUnitCandidate";
    case Errc::SigmaVarianceDetected: return "SigmaVarianceDetected";
    case Errc::NoRootInM: return "NoRootInM";
    case Errc::NotTorsion: return "NotTorsion";
    case Errc::DenominatorDegenerate: return "DenominatorDegenerate";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying its kind.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace reclab
