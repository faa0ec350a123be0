#include "qpagerank/error.hpp"

namespace qpr {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::NoNodes: return "NoNodes";
    case ErrorKind::MissingHeader: return "MissingHeader";
    case ErrorKind::UndeclaredVertex: return "UndeclaredVertex";
    case ErrorKind::DuplicateVertex: return "DuplicateVertex";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotStochastic: return "NotStochastic";
    case ErrorKind::Numerical: return "Numerical";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

namespace {
std::string with_line(std::size_t line, const std::string& message) {
  if (line == 0) return message;
  return "line " + std::to_string(line) + ": " + message;
}
}  // namespace

ParseError::ParseError(ErrorKind kind, std::size_t line, const std::string& message)
    : Error(kind, with_line(line, message)), line_(line) {}

}  // namespace qpr
