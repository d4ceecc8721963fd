#pragma once

#include <cstddef>
#include <span>

#include "spatialsign/linalg.hpp"

namespace spatialsign {

/// n observations (rows) of dimension p (columns), all entries finite.
class DataMatrix {
 public:
  explicit DataMatrix(Matrix rows);

  Eigen::Index n() const noexcept { return x_.rows(); }
  Eigen::Index p() const noexcept { return x_.cols(); }
  const Matrix& values() const noexcept { return x_; }
  auto row(Eigen::Index i) const { return x_.row(i); }
  auto col(Eigen::Index j) const { return x_.col(j); }

  /// Columns (i, j) as an n x 2 data set.
  DataMatrix pair(Eigen::Index i, Eigen::Index j) const;

 private:
  Matrix x_;
};

using LocationVector = Vector;

/// (x - center) / |x - center|, or the zero vector when x and center coincide.
/// Residuals below 1e-12 of the coordinate magnitude count as coincident.
Vector spatial_sign(const Vector& x, const Vector& center);

struct SpatialMedianOptions {
  double tolerance = 1e-9;
  std::size_t max_iterations = 10'000;
};

/// Minimiser of sum_i |X_i - mu|.
///
/// Weiszfeld iteration started at the coordinatewise median, with the
/// Vardi-Zhang step when an iterate coincides with observations. Stops when
/// |(1/n) sum_i s(X_i - mu)| <= tolerance, or when mu sits on an observation
/// of multiplicity k and the sign sum over the remaining points has norm <= k.
/// Throws ConvergenceError carrying the last iterate otherwise.
LocationVector spatial_median(const DataMatrix& data,
                              const SpatialMedianOptions& options = {});

/// |(1/n) sum_i s(X_i - mu)|.
double sign_centering_residual(const DataMatrix& data, const LocationVector& mu);

/// sum_i |X_i - mu|.
double spatial_median_objective(const DataMatrix& data, const LocationVector& mu);

/// Sample median; the mean of the two middle values for even length.
double median(std::span<const double> x);

/// Median absolute deviation about the median, no consistency factor.
/// Throws DegenerateScale (index 0) when the result is zero.
double mad(std::span<const double> x);

}  // namespace spatialsign
