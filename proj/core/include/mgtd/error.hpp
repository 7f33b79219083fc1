#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mgtd {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File cannot be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// A record, table or config violates its schema or invariants.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  // 1-based input line, 0 when not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class CalibrationError : public Error {
 public:
  using Error::Error;
};

// Pipeline configuration is inconsistent, or does not match a threshold table.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mgtd
