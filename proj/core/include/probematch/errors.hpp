#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace probematch {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data (JSON schema, ids, distributions).
class DataError : public Error {
 public:
  using Error::Error;
};

/// A probe string repeats an edge or references an edge outside the vertex.
class InvalidStringError : public Error {
 public:
  using Error::Error;
};

/// Constraint enumeration would exceed the caller's cap.
class EnumerationExplosion : public Error {
 public:
  EnumerationExplosion(std::size_t cap)
      : Error("probe-string enumeration exceeds cap of " + std::to_string(cap) +
              " strings; use column generation instead"),
        cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

/// An operation does not support the given probing-constraint kind.
class UnsupportedConstraint : public Error {
 public:
  using Error::Error;
};

class DoubleProbeError : public Error {
 public:
  using Error::Error;
};

class InvalidDistributionError : public Error {
 public:
  using Error::Error;
};

/// A y-system violates the prefix marginal condition.
class InvalidYError : public Error {
 public:
  using Error::Error;
};

class InfeasibleFractionalPoint : public Error {
 public:
  using Error::Error;
};

/// State space or enumeration is beyond the configured limits.
class SizeLimitError : public Error {
 public:
  SizeLimitError(const std::string& what, double estimate)
      : Error(what + " (estimated size " + std::to_string(estimate) + ")"), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

/// Simplex failure: infeasible, unbounded or numerical stall.
class SimplexError : public Error {
 public:
  SimplexError(const std::string& what, std::size_t iterations, double worst_residual)
      : Error(what + " after " + std::to_string(iterations) +
              " iterations (worst residual " + std::to_string(worst_residual) + ")"),
        iterations_(iterations),
        worst_residual_(worst_residual) {}
  std::size_t iterations() const noexcept { return iterations_; }
  double worst_residual() const noexcept { return worst_residual_; }

 private:
  std::size_t iterations_;
  double worst_residual_;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(std::size_t rounds, double gap)
      : Error("column generation did not converge within " + std::to_string(rounds) +
              " rounds; last pricing gap " + std::to_string(gap)),
        rounds_(rounds),
        gap_(gap) {}
  std::size_t rounds() const noexcept { return rounds_; }
  double gap() const noexcept { return gap_; }

 private:
  std::size_t rounds_;
  double gap_;
};

}  // namespace probematch
