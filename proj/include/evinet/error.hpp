#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace evinet {

enum class ErrorKind {
  kDimension,
  kConflict,
  kInvalidNet,
  kInvalidMass,
  kInvalidMarking,
  kIndexOutOfRange,
  kPrecondition,
  kCapExceeded,
  kRejectedCombination,
  kParse,
};

const char* to_string(ErrorKind kind);

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& message)
      : Error(ErrorKind::kDimension, message) {}
};

/// A receptivity vector makes two output transitions of one place true.
class ConflictError : public Error {
 public:
  explicit ConflictError(const std::string& message)
      : Error(ErrorKind::kConflict, message) {}
};

class InvalidNetError : public Error {
 public:
  explicit InvalidNetError(const std::string& message)
      : Error(ErrorKind::kInvalidNet, message) {}
};

class InvalidMassError : public Error {
 public:
  explicit InvalidMassError(const std::string& message)
      : Error(ErrorKind::kInvalidMass, message) {}
};

class InvalidMarkingError : public Error {
 public:
  explicit InvalidMarkingError(const std::string& message)
      : Error(ErrorKind::kInvalidMarking, message) {}
};

class IndexError : public Error {
 public:
  explicit IndexError(const std::string& message)
      : Error(ErrorKind::kIndexOutOfRange, message) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& message)
      : Error(ErrorKind::kPrecondition, message) {}
};

/// A transfer table would exceed the configured size cap.
class CapError : public Error {
 public:
  CapError(const std::string& message, unsigned long long required_cells)
      : Error(ErrorKind::kCapExceeded, message), required_cells_(required_cells) {}

  /// Number of table cells the net would need; saturates at ULLONG_MAX.
  unsigned long long required_cells() const noexcept { return required_cells_; }

 private:
  unsigned long long required_cells_;
};

class RejectedCombinationError : public Error {
 public:
  explicit RejectedCombinationError(const std::string& message)
      : Error(ErrorKind::kRejectedCombination, message) {}
};

/// Raised by run() when one of the inputs fails; carries the input index and
/// the kind of the underlying failure.
class RunError : public Error {
 public:
  RunError(std::size_t index, ErrorKind cause, const std::string& message)
      : Error(cause, "input " + std::to_string(index) + ": " + message),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Source location and message; lines and columns are one-based, column 0
/// means the whole line.
struct Diagnostic {
  std::size_t line = 0;
  std::size_t column = 0;
  std::string message;

  std::string to_string() const;
};

class ParseError : public Error {
 public:
  explicit ParseError(std::vector<Diagnostic> diagnostics);
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : ParseError(std::vector<Diagnostic>{{line, column, message}}) {}

  const std::vector<Diagnostic>& diagnostics() const noexcept {
    return diagnostics_;
  }

 private:
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace evinet
