#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tempo_katz {

/// Base class for all library errors that callers are expected to handle.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed edge-list or coefficient text.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a structural invariant (self-loop,
/// negative id, non-increasing timestamps, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Downweighting parameter outside the admissible interval.
class ParameterError : public Error {
 public:
  ParameterError(const std::string& what, double alpha, double limit)
      : Error(what), alpha_(alpha), limit_(limit) {}

  double alpha() const noexcept { return alpha_; }
  double limit() const noexcept { return limit_; }

 private:
  double alpha_;
  double limit_;
};

/// Linear system could not be solved to the requested residual.
class SolveError : public Error {
 public:
  using Error::Error;
};

/// Spectral estimate needed for a parameter check did not converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration refused because the walk count estimate is too large.
class GuardError : public Error {
 public:
  GuardError(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}

  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

}  // namespace tempo_katz
