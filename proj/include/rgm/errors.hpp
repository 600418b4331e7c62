#pragma once

#include <stdexcept>
#include <string>

namespace rgm {

// Bad arguments, malformed configuration or inputs that violate a documented
// precondition. Maps to CLI exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Unreadable or unwritable files, parse failures. Maps to CLI exit code 3.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite data, singular systems where a finite answer is required.
// Maps to CLI exit code 4.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rgm
