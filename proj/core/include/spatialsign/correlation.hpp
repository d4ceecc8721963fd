#pragma once

#include <optional>
#include <string_view>

#include "spatialsign/eigenmap.hpp"
#include "spatialsign/linalg.hpp"
#include "spatialsign/location_scale.hpp"

namespace spatialsign {

enum class CorrelationMethod { sscor, two_stage, moment };
enum class MatrixMethod { pairwise, multivariate, moment };

std::string_view to_string(CorrelationMethod m) noexcept;
std::string_view to_string(MatrixMethod m) noexcept;

struct CorrelationEstimate {
  double rho;
  CorrelationMethod method;
  Eigen::Index n;
};

struct CorrelationMatrixEstimate {
  SymmetricMatrix matrix;
  MatrixMethod method;
  /// Shape estimate V = U Lambda U^T and its spectrum; multivariate only.
  std::optional<SymmetricMatrix> shape;
  std::optional<ShapeSpectrum> lambdas;
  std::size_t fixed_point_iterations = 0;
};

struct ConfidenceInterval {
  double lower;
  double upper;
  double level;
};

/// Spatial sign correlation of bivariate data: SSCM at the spatial median,
/// eigenvalues mapped by inverse_p2, rho = v12 / sqrt(v11 v22) of the
/// reconstructed shape. Throws DegenerateData when a reconstructed variance
/// vanishes.
CorrelationEstimate sscor(const DataMatrix& data);

/// sscor() after dividing each column by its mad.
CorrelationEstimate sscor_two_stage(const DataMatrix& data);

/// Asymptotic variance of sscor: (1 - rho^2)^2 + (a + 1/a)/2 * (1 - rho^2)^(3/2),
/// a the ratio of marginal scales.
double asv_sscor(double rho, double a);

/// Asymptotic variance of the two-stage estimator: (1 - rho^2)^2 + (1 - rho^2)^(3/2).
double asv_two_stage(double rho);

/// Wald interval rho +- z * sqrt(asv_two_stage(rho) / n), clipped to [-1, 1].
/// Only defined for two-stage estimates.
ConfidenceInterval confidence_interval(const CorrelationEstimate& est, double level);

/// Each column divided by its mad. DegenerateScale carries the column index.
DataMatrix standardize_by_mad(const DataMatrix& data);

/// Two-stage spatial sign correlation of every pair of columns. Symmetric with
/// unit diagonal, not necessarily positive semi-definite.
CorrelationMatrixEstimate pairwise_matrix(const DataMatrix& data);

/// Multivariate spatial sign correlation matrix. Standardises by mad, takes
/// the SSCM at the spatial median, inverts its eigenvalues with the fixed-point
/// map and normalises U Lambda U^T to unit diagonal. Positive semi-definite.
/// The fixed point is iterated to 1e-12 so that for p = 2 the result matches
/// the closed-form two-stage estimate to 1e-10.
CorrelationMatrixEstimate multivariate_matrix(const DataMatrix& data,
                                              const InverseOptions& options = {1e-12, 500});

/// Pearson correlation matrix.
CorrelationMatrixEstimate moment_matrix(const DataMatrix& data);

}  // namespace spatialsign
