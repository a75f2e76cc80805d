#pragma once

#include <stdexcept>
#include <string>

namespace copod {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// File could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input: bad CSV/ARFF cell, corrupted model document, etc.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Model document carries an unsupported format_version.
class FormatVersionError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Input too small or otherwise unusable for fitting (e.g. n < 2).
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

// Query/model/dataset dimensionalities disagree.
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

// Argument outside its documented domain (bad fraction, out-of-range row, ...).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace copod
