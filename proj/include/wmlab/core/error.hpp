#pragma once

#include <stdexcept>
#include <string>

namespace wmlab {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid model or parameter (radius outside the domain, nonpositive warp, ...).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Numerical procedure did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A mathematical identity failed beyond tolerance. Carries the discrepancy.
class IdentityViolation : public Error {
 public:
  IdentityViolation(const std::string& what, double discrepancy)
      : Error(what), discrepancy_(discrepancy) {}
  double discrepancy() const noexcept { return discrepancy_; }

 private:
  double discrepancy_;
};

/// Config parse error anchored at a line of the source text.
class ConfigError : public Error {
 public:
  ConfigError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace wmlab
