#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace spatialsign {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: non-finite entries, wrong dimensions, invalid spectra.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A robust scale (mad) or a diagonal entry vanished.
class DegenerateScale : public Error {
 public:
  DegenerateScale(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// The data do not determine the estimate, e.g. an SSCM of rank one.
class DegenerateData : public Error {
 public:
  using Error::Error;
};

/// Fewer than two nonzero eigenvalues where the eigenvalue map needs two.
class RankDeficient : public Error {
 public:
  using Error::Error;
};

/// An iterative solver stopped at its iteration cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::size_t iterations,
                   double residual, std::vector<double> last_iterate)
      : Error(what),
        iterations_(iterations),
        residual_(residual),
        last_iterate_(std::move(last_iterate)) {}

  std::size_t iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }
  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }

 private:
  std::size_t iterations_;
  double residual_;
  std::vector<double> last_iterate_;
};

/// An internal postcondition failed; indicates a bug rather than bad input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace spatialsign
