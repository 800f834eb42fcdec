#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dirclust {

// Base for every error raised by the library. The CLI maps each subclass to a
// distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A dataset or gold-standard record that could not be parsed. `line()` is
/// 1-based; 0 means the error is not tied to a particular line.
class ParseError : public IoError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : IoError(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DimensionMismatch : public ParseError {
 public:
  using ParseError::ParseError;
};

// Automatic threshold discovery could not find a usable minimum.
class EstimationFailed : public Error {
 public:
  using Error::Error;
};

// A metric whose denominator vanishes (e.g. cost when every pair is similar).
class UndefinedMetric : public Error {
 public:
  using Error::Error;
};

}  // namespace dirclust
