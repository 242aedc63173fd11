#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cpcp {

// Base class for recoverable errors raised by the library (bad input,
// validation failures). Programming errors use ContractViolation.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance-file syntax or validation error. line() is 1-based, 0 when the
// error is not tied to a particular line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cpcp
