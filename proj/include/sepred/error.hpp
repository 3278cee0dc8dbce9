#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sepred {

enum class ErrorKind {
  NotHermitian,
  NoConvergence,
  SingularMarginal,
  DimensionMismatch,
  NotAState,
  ZeroState,
  ZeroVector,
  EpsilonOutOfRange,
  NotFlipSymmetric,
  EqualDims,
  RankOutOfRange,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SingularMarginal: return "SingularMarginal";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotAState: return "NotAState";
    case ErrorKind::ZeroState: return "ZeroState";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorKind::NotFlipSymmetric: return "NotFlipSymmetric";
    case ErrorKind::EqualDims: return "EqualDims";
    case ErrorKind::RankOutOfRange: return "RankOutOfRange";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace sepred
