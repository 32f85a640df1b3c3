#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pairwire {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid run configuration (grid resolution, truncation length, flags).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Input outside the admissible set of a validated parameter (negative
/// interaction strength, non-positive density, ...).
class ValidationError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Occupation or excited-density sums that diverge at the requested
/// chemical potential.
class DivergenceError : public DomainError {
public:
  using DomainError::DomainError;
};

class SizeError : public Error {
public:
  using Error::Error;
};

class UsageError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

/// An iterative procedure ran out of iterations. Carries the best iterate
/// seen so callers can report how far off it was.
class IterationError : public Error {
public:
  IterationError(const std::string& what, int iterations,
                 std::vector<double> best_values = {},
                 std::vector<double> best_residuals = {})
      : Error(what),
        iterations_(iterations),
        best_values_(std::move(best_values)),
        best_residuals_(std::move(best_residuals)) {}

  int iterations() const noexcept { return iterations_; }
  const std::vector<double>& best_values() const noexcept { return best_values_; }
  const std::vector<double>& best_residuals() const noexcept { return best_residuals_; }

private:
  int iterations_;
  std::vector<double> best_values_;
  std::vector<double> best_residuals_;
};

/// A search for a crossing strength hit its upper cap without crossing.
class CapError : public Error {
public:
  CapError(const std::string& what, double largest_tested)
      : Error(what), largest_tested_(largest_tested) {}
  double largest_tested() const noexcept { return largest_tested_; }

private:
  double largest_tested_;
};

}  // namespace pairwire
