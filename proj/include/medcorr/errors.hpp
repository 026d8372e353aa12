#pragma once

#include <stdexcept>
#include <string>

namespace medcorr {

// Eigenvalue dropped below the clip window, or a state stopped being a
// density operator for reasons other than float noise.
class PositivityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A truncated Fock space was too small for the requested computation.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The master-equation integrator produced an invalid state.
class IntegratorError : public std::runtime_error {
 public:
  IntegratorError(double t, const std::string& what)
      : std::runtime_error("integrator failure at t=" + std::to_string(t) + ": " + what),
        time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

// Config-file syntax or validation problem; carries the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace medcorr
