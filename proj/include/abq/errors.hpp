#pragma once

#include <stdexcept>
#include <string>

namespace abq {

/// Malformed or inconsistent input to a library operation.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Configuration file or command-line parameters that cannot be used.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A series file that does not match the expected schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A quantity whose denominator vanishes (e.g. a ratio with a zero norm).
class UndefinedRatioError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace abq
