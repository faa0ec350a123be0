#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qpr {

enum class ErrorKind {
  Parse,
  NoNodes,
  MissingHeader,
  UndeclaredVertex,
  DuplicateVertex,
  InvalidArgument,
  OutOfRange,
  DimensionMismatch,
  NotStochastic,
  Numerical,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Input-format error. `line()` is 1-based, 0 when the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t line, const std::string& message);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace qpr
