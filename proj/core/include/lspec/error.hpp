#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lspec {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (pole, empty range).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Argument that is well-typed but violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Request would exceed a configured resource limit.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; carries the 1-based line number (0 when not applicable).
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), source_(source), line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

}  // namespace lspec
