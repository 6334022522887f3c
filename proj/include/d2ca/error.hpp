#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace d2ca {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fewer than three distinct points, or all points collinear.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class InvalidK : public Error {
 public:
  using Error::Error;
};

class PartitionViolation : public Error {
 public:
  using Error::Error;
};

class InvalidTopology : public Error {
 public:
  using Error::Error;
};

/// Malformed or self-inconsistent dataset specification.
class SpecError : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// Bad run configuration (out-of-range parameter, K list size, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Unparseable input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Wraps another library error with the pipeline phase and node it came from.
class PhaseError : public Error {
 public:
  PhaseError(std::string phase, int node, const std::string& what)
      : Error("[" + phase + (node >= 0 ? " node " + std::to_string(node) : std::string{}) + "] " + what),
        phase_(std::move(phase)),
        node_(node) {}

  const std::string& phase() const noexcept { return phase_; }
  int node() const noexcept { return node_; }

 private:
  std::string phase_;
  int node_;
};

}  // namespace d2ca
