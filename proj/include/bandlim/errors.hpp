// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace bandlim {

/// Failure categories. Each maps to a fixed CLI exit code (see cli docs).
enum class ErrorKind {
  DivisionByZero,
  GeneratorFailure,
  SyntaxError,
  ValidationError,
  NotIntegrable,
  Inconclusive,
  ResourceLimit,
  UnsupportedExponent,
  MissingConstant,
  MalformedProgram,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::GeneratorFailure: return "GeneratorFailure";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::NotIntegrable: return "NotIntegrable";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::UnsupportedExponent: return "UnsupportedExponent";
    case ErrorKind::MissingConstant: return "MissingConstant";
    case ErrorKind::MalformedProgram: return "MalformedProgram";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse error with a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& msg)
      : Error(ErrorKind::SyntaxError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace bandlim
