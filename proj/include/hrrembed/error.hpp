#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hrrembed {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two vectors (or a vector and a container) disagree on length.
class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual, const std::string& context = {})
      : Error((context.empty() ? std::string{} : context + ": ") + "dimension mismatch (expected " +
              std::to_string(expected) + ", got " + std::to_string(actual) + ")"),
        expected_(expected),
        actual_(actual) {}

  [[nodiscard]] std::size_t expected() const noexcept { return expected_; }
  [[nodiscard]] std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

// A vector whose norm is zero reached an operation that divides by it.
class DegenerateVector : public Error {
 public:
  using Error::Error;
};

// Malformed input text. line() is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0)
      : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Structurally valid input whose contents contradict each other.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Bad parameters or annotations that reference unknown tags.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hrrembed
