#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lowmach {

enum class Errc {
  InvalidArgument,
  NonZeroMean,
  VacuumReached,
  CflViolation,
  NotSolenoidal,
  InvariantViolation,
  NegativeRadicand,
  GridMismatch,
  TimeMismatch,
  MeanViolation,
  DegenerateFit,
  ConfigError,
  Io,
};

std::string_view to_string(Errc code) noexcept;

/// All library failures are reported through this type; `code()` is stable and
/// used by the CLI to map failures onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NonZeroMean: return "NonZeroMean";
    case Errc::VacuumReached: return "VacuumReached";
    case Errc::CflViolation: return "CflViolation";
    case Errc::NotSolenoidal: return "NotSolenoidal";
    case Errc::InvariantViolation: return "InvariantViolation";
    case Errc::NegativeRadicand: return "NegativeRadicand";
    case Errc::GridMismatch: return "GridMismatch";
    case Errc::TimeMismatch: return "TimeMismatch";
    case Errc::MeanViolation: return "MeanViolation";
    case Errc::DegenerateFit: return "DegenerateFit";
    case Errc::ConfigError: return "ConfigError";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace lowmach
