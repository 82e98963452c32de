#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace irops {

/// Root of every error thrown by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input file does not carry the expected columns.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration (synth config, shift schedule, pipeline config).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operation needs at least one element and got none.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

/// Lookup of a key that is not in the supplied table.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Shapes of two operands disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Iterative method did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_iterate)
      : Error(what), last_iterate_(last_iterate) {}

  [[nodiscard]] double last_iterate() const noexcept { return last_iterate_; }

 private:
  double last_iterate_;
};

/// Matrix could not be factorized even after the maximum jitter.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// Bad command line; the CLI maps this to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace irops
