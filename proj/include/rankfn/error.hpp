#ifndef RANKFN_ERROR_HPP
#define RANKFN_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace rankfn {

/// Machine-readable category of a rejected input. The CLI reports the
/// kind verbatim, so names are part of the public surface.
enum class ErrorKind {
  InvalidPartition,
  InvalidRankFunction,
  SizeMismatch,
  NotZeroAtZero,
  NotStrictlyIncreasing,
  NotConvex,
  TableTooShort,
  InvalidEquation,
  TrivialMember,
  NotNilpotent,
  NoRepresentableSolution,
  BudgetExceeded,
  EmptySolutionSet,
  ParseError,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidPartition: return "InvalidPartition";
    case ErrorKind::InvalidRankFunction: return "InvalidRankFunction";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::NotZeroAtZero: return "NotZeroAtZero";
    case ErrorKind::NotStrictlyIncreasing: return "NotStrictlyIncreasing";
    case ErrorKind::NotConvex: return "NotConvex";
    case ErrorKind::TableTooShort: return "TableTooShort";
    case ErrorKind::InvalidEquation: return "InvalidEquation";
    case ErrorKind::TrivialMember: return "TrivialMember";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::NoRepresentableSolution: return "NoRepresentableSolution";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::EmptySolutionSet: return "EmptySolutionSet";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::invalid_argument {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace rankfn

#endif  // RANKFN_ERROR_HPP
