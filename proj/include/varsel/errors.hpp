#pragma once

#include <stdexcept>
#include <string>

namespace varsel {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration values or parameter combinations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data (ragged CSV rows, duplicate column
// names, a declared-binary column with more than two levels, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// A referenced column name does not exist in the dataset.
class UnknownColumnError : public DataError {
 public:
  using DataError::DataError;
};

// A column is (numerically) constant where standardization requires spread.
class ZeroVarianceError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace varsel
