#pragma once

#include <cstddef>
#include <span>

#include "spatialsign/linalg.hpp"

namespace spatialsign {

namespace detail {
struct ShapeTag;
struct SignTag;
}  // namespace detail

/// Trace-normalised spectrum: non-negative, sorted descending, summing to one.
///
/// Construction sorts the input, clamps entries in [-1e-12, 0) to zero,
/// renormalises when the sum is within 1e-9 of one and rejects anything else
/// with InvalidInput. Use normalized() to rescale an arbitrary non-negative
/// vector.
template <class Tag>
class Spectrum {
 public:
  explicit Spectrum(const Vector& values);
  explicit Spectrum(std::span<const double> values);

  static Spectrum normalized(const Vector& values);

  Eigen::Index size() const noexcept { return v_.size(); }
  double operator[](Eigen::Index i) const { return v_(i); }
  const Vector& values() const noexcept { return v_; }
  Eigen::Index nonzero_count() const noexcept;

 private:
  struct Trusted {};
  Spectrum(Vector values, Trusted) : v_(std::move(values)) {}
  Vector v_;
};

/// Eigenvalues of a trace-one shape matrix V0.
using ShapeSpectrum = Spectrum<detail::ShapeTag>;
/// Eigenvalues of the spatial sign covariance matrix.
using SignSpectrum = Spectrum<detail::SignTag>;

extern template class Spectrum<detail::ShapeTag>;
extern template class Spectrum<detail::SignTag>;

/// Closed-form bivariate map: delta_i = sqrt(lambda_i) / (sqrt(lambda_1) + sqrt(lambda_2)).
SignSpectrum forward_p2(const ShapeSpectrum& lambda);

/// lambda_i = delta_i^2 / (delta_1^2 + delta_2^2).
ShapeSpectrum inverse_p2(const SignSpectrum& delta);

/// Integrals I_i = int_0^inf dx / ((1 + lambda_i x) prod_j (1 + lambda_j x)^(1/2))
/// for every i with lambda_i > 0; entries for zero lambda_i are left at zero.
/// Requires at least two positive entries (throws RankDeficient otherwise).
/// Evaluated with x = s t / (1 - t) and adaptive Gauss-Kronrod on [0, 1).
Vector sign_integrals(const Vector& lambda);

/// General map delta_i = (lambda_i / 2) I_i, accurate to 1e-10 absolute.
/// The rank-one spectrum (1, 0, ..., 0) maps to itself.
SignSpectrum forward(const ShapeSpectrum& lambda);

struct InverseOptions {
  double tolerance = 1e-10;
  std::size_t max_iterations = 500;
};

struct InverseResult {
  ShapeSpectrum lambda;
  std::size_t iterations;
  /// Sup-norm change of the last iteration.
  double residual;
};

/// Fixed-point inversion of forward():
///   lambda^(0) = delta,
///   lambda~_i  = 2 delta_i / I_i(lambda^(k)),
///   lambda^(k+1) = lambda~ / sum(lambda~),
/// until the sup-norm change is below tolerance. Throws RankDeficient for
/// fewer than two nonzero deltas and ConvergenceError at the iteration cap.
InverseResult inverse(const SignSpectrum& delta, const InverseOptions& options = {});

}  // namespace spatialsign
