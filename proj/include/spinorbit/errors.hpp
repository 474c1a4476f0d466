#pragma once

#include <stdexcept>
#include <string>

namespace spinorbit {

/// Raised when an argument lies outside the documented domain of an operation.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a numerical result fails its own consistency checks
/// (truncation starvation, eigenvalue residues above tolerance, ...).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// A truncated expansion captured too little probability to be trusted.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double captured, double tail)
      : NumericalError(what), captured_(captured), tail_(tail) {}
  double captured() const { return captured_; }
  double tail() const { return tail_; }

 private:
  double captured_;
  double tail_;
};

/// Raised when a file cannot be read or written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spinorbit
