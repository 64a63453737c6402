#pragma once

#include <stdexcept>
#include <string>

namespace ho {

// Every recoverable failure in the library is a DomainError with a stable
// machine-readable code. The CLI maps these to exit code 2.
enum class Errc {
  UnknownFamily,
  RankOutOfRange,
  NotARoot,
  WeylGroupTooLarge,
  ResonantParameter,
  HeightOverflow,
  OutsideNegativeChamber,
  TailNotConverged,
  TooCloseToWallOrOrigin,
  PoleAtNonpositiveInteger,
  IndeterminateAfterLimit,
  NotRegular,
  MC1Violated,
  RegularityViolated,
  StepTooLarge,
  DegreeCapExceeded,
  NonnegativityViolated,
  InvalidArgument,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::UnknownFamily: return "UnknownFamily";
    case Errc::RankOutOfRange: return "RankOutOfRange";
    case Errc::NotARoot: return "NotARoot";
    case Errc::WeylGroupTooLarge: return "WeylGroupTooLarge";
    case Errc::ResonantParameter: return "ResonantParameter";
    case Errc::HeightOverflow: return "HeightOverflow";
    case Errc::OutsideNegativeChamber: return "OutsideNegativeChamber";
    case Errc::TailNotConverged: return "TailNotConverged";
    case Errc::TooCloseToWallOrOrigin: return "TooCloseToWallOrOrigin";
    case Errc::PoleAtNonpositiveInteger: return "PoleAtNonpositiveInteger";
    case Errc::IndeterminateAfterLimit: return "IndeterminateAfterLimit";
    case Errc::NotRegular: return "NotRegular";
    case Errc::MC1Violated: return "MC1Violated";
    case Errc::RegularityViolated: return "RegularityViolated";
    case Errc::StepTooLarge: return "StepTooLarge";
    case Errc::DegreeCapExceeded: return "DegreeCapExceeded";
    case Errc::NonnegativityViolated: return "NonnegativityViolated";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class DomainError : public std::runtime_error {
 public:
  DomainError(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw DomainError(code, msg); }

}  // namespace ho
