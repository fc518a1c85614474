#ifndef SLICESIM_ERRORS_HPP_
#define SLICESIM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace slicesim {

// Scenario / input validation problems. CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A run-time invariant tripped mid-run (bug trap). CLI exit code 3.
class InvariantViolation : public std::runtime_error {
 public:
  explicit InvariantViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// File system / serialization failures. CLI exit code 4.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace slicesim

#endif
