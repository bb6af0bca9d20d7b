#pragma once

#include <stdexcept>
#include <string>

namespace snnlab {

// Exit codes used by the CLI. Library code throws; the CLI maps to these.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitNumeric = 3,
};

struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Iterative solver gave up; carries the last estimate and residual.
struct ConvergenceError : NumericError {
  ConvergenceError(const std::string& msg, double last_estimate, double residual)
      : NumericError(msg), last_estimate(last_estimate), residual(residual) {}
  double last_estimate;
  double residual;
};

struct IdxError : DataError {
  enum class Kind { BadMagic, Truncated, CountMismatch };
  IdxError(Kind kind, const std::string& msg) : DataError(msg), kind(kind) {}
  Kind kind;
};

}  // namespace snnlab
