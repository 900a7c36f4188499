#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wbench {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration value (register size, scenario knob, config key).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// An execution backend failed while running a circuit.
class BackendError : public Error {
 public:
  using Error::Error;
};

/// Calibration matrix could not be applied. Carries the condition estimate
/// when the failure is numerical.
class MitigationError : public Error {
 public:
  explicit MitigationError(const std::string& what, double condition = 0.0)
      : Error(what), condition_(condition) {}

  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// Sinusoid fit failed to converge or the input carries no signal.
class FitError : public Error {
 public:
  explicit FitError(const std::string& what, std::string diagnostics = {})
      : Error(what), diagnostics_(std::move(diagnostics)) {}

  const std::string& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::string diagnostics_;
};

/// Malformed persisted record. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Record written by an incompatible schema version.
class SchemaVersionError : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace wbench
