#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mineplanner {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class SchemaError : public Error { using Error::Error; };
class RangeError : public Error { using Error::Error; };
class ConfigError : public Error { using Error::Error; };
class BuildError : public Error { using Error::Error; };
class EmissionError : public Error { using Error::Error; };
class GroundingLimitError : public Error { using Error::Error; };
class EvaluationError : public Error { using Error::Error; };
class ContractViolation : public Error { using Error::Error; };
class BindingError : public Error { using Error::Error; };
class NotFoundError : public Error { using Error::Error; };

}  // namespace mineplanner
