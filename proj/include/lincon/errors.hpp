#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lincon {

enum class ErrorKind {
  NotPositiveDefinite,
  OrderMismatch,
  LengthMismatch,
  ConvergenceFailure,
  MaxIterations,
  RankDeficient,
  NoPDPoint,
  InvalidBracket,
  NotChordal,
  OutOfRange,
  NoMLE,
  EnumerationBound,
  DomainError,
  SyntaxError,
  InputError,
};

const char* to_string(ErrorKind kind);

// Base of every error raised by the library. The kind is what callers
// dispatch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // True for failures of an iterative method (as opposed to bad input).
  bool is_numeric() const noexcept {
    return kind_ == ErrorKind::ConvergenceFailure || kind_ == ErrorKind::MaxIterations ||
           kind_ == ErrorKind::NoPDPoint || kind_ == ErrorKind::NoMLE;
  }

 private:
  ErrorKind kind_;
};

class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(std::size_t pivot)
      : Error(ErrorKind::NotPositiveDefinite, "pivot " + std::to_string(pivot)), pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorKind::SyntaxError, "at " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::MaxIterations: return "MaxIterations";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NoPDPoint: return "NoPDPoint";
    case ErrorKind::InvalidBracket: return "InvalidBracket";
    case ErrorKind::NotChordal: return "NotChordal";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NoMLE: return "NoMLE";
    case ErrorKind::EnumerationBound: return "EnumerationBound";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::InputError: return "InputError";
  }
  return "Error";
}

}  // namespace lincon
