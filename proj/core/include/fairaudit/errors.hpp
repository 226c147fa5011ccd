#pragma once

#include <stdexcept>
#include <string>

namespace fairaudit {

// Error taxonomy mirrors the CLI exit codes: schema/parse problems are
// reported separately from empty-slice and domain problems.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mapped column is missing, or the input is structurally unusable.
struct SchemaError : Error {
  using Error::Error;
};

// A data row failed validation in strict mode.
struct ParseError : Error {
  using Error::Error;
};

// A requested (group, outcome, ...) slice has no records.
struct EmptySliceError : Error {
  using Error::Error;
};

// An argument is outside the mathematical domain of the operation.
struct DomainError : Error {
  using Error::Error;
};

// Invalid configuration (bins, simulation parameters, ...).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace fairaudit
