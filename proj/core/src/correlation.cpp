#include "spatialsign/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "spatialsign/error.hpp"
#include "spatialsign/sscm.hpp"

namespace spatialsign {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidInput(msg);
}

double clip_unit(double x) { return std::clamp(x, -1.0, 1.0); }

double one_minus_sq(double rho) {
  require(std::isfinite(rho) && std::abs(rho) <= 1.0, "correlation must lie in [-1, 1]");
  return std::max(0.0, 1.0 - rho * rho);
}

}  // namespace

std::string_view to_string(CorrelationMethod m) noexcept {
  switch (m) {
    case CorrelationMethod::sscor: return "sscor";
    case CorrelationMethod::two_stage: return "two_stage";
    case CorrelationMethod::moment: return "moment";
  }
  return "unknown";
}

std::string_view to_string(MatrixMethod m) noexcept {
  switch (m) {
    case MatrixMethod::pairwise: return "pairwise";
    case MatrixMethod::multivariate: return "multivariate";
    case MatrixMethod::moment: return "moment";
  }
  return "unknown";
}

CorrelationEstimate sscor(const DataMatrix& data) {
  require(data.p() == 2, "sscor: expected bivariate data, got p = " + std::to_string(data.p()));
  require(data.n() >= 3, "sscor: need n >= 3");

  const SscmEstimate s = sscm_auto(data);
  const EigenDecomposition eig = sym_eigen(s.matrix);
  const ShapeSpectrum lambda = inverse_p2(SignSpectrum::normalized(eig.eigenvalues));
  const SymmetricMatrix v = eig.reconstruct(lambda.values());
  const double denom = v(0, 0) * v(1, 1);
  if (!(denom > 0.0)) {
    throw DegenerateData("sscor: spatial signs are confined to a coordinate axis");
  }
  return {clip_unit(v(0, 1) / std::sqrt(denom)), CorrelationMethod::sscor, data.n()};
}

DataMatrix standardize_by_mad(const DataMatrix& data) {
  Matrix x = data.values();
  for (Eigen::Index j = 0; j < data.p(); ++j) {
    const std::vector<double> col(x.col(j).begin(), x.col(j).end());
    double scale = 0.0;
    try {
      scale = mad(col);
    } catch (const DegenerateScale&) {
      throw DegenerateScale("column " + std::to_string(j) + " has zero mad",
                            static_cast<std::size_t>(j));
    }
    x.col(j) /= scale;
  }
  return DataMatrix(std::move(x));
}

CorrelationEstimate sscor_two_stage(const DataMatrix& data) {
  require(data.p() == 2, "sscor_two_stage: expected bivariate data");
  require(data.n() >= 3, "sscor_two_stage: need n >= 3");
  CorrelationEstimate est = sscor(standardize_by_mad(data));
  est.method = CorrelationMethod::two_stage;
  return est;
}

double asv_sscor(double rho, double a) {
  require(std::isfinite(a) && a > 0.0, "asv_sscor: scale ratio must be positive");
  const double q = one_minus_sq(rho);
  return q * q + 0.5 * (a + 1.0 / a) * std::pow(q, 1.5);
}

double asv_two_stage(double rho) {
  const double q = one_minus_sq(rho);
  return q * q + std::pow(q, 1.5);
}

ConfidenceInterval confidence_interval(const CorrelationEstimate& est, double level) {
  require(est.method == CorrelationMethod::two_stage,
          "confidence_interval: only defined for two-stage estimates");
  require(level > 0.0 && level < 1.0, "confidence_interval: level must lie in (0, 1)");
  require(est.n >= 3, "confidence_interval: need n >= 3");
  const boost::math::normal standard;
  const double z = boost::math::quantile(standard, 0.5 * (1.0 + level));
  const double half = z * std::sqrt(asv_two_stage(est.rho) / static_cast<double>(est.n));
  return {clip_unit(est.rho - half), clip_unit(est.rho + half), level};
}

CorrelationMatrixEstimate pairwise_matrix(const DataMatrix& data) {
  require(data.p() >= 2, "pairwise_matrix: need p >= 2");
  require(data.n() >= 3, "pairwise_matrix: need n >= 3");
  const DataMatrix z = standardize_by_mad(data);
  const Eigen::Index p = data.p();
  Matrix r = Matrix::Identity(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = i + 1; j < p; ++j) {
      try {
        r(i, j) = r(j, i) = sscor(z.pair(i, j)).rho;
      } catch (const DegenerateData& e) {
        throw DegenerateData("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                             "): " + e.what());
      }
    }
  }
  return {SymmetricMatrix(r), MatrixMethod::pairwise, std::nullopt, std::nullopt, 0};
}

CorrelationMatrixEstimate multivariate_matrix(const DataMatrix& data,
                                              const InverseOptions& options) {
  require(data.p() >= 2, "multivariate_matrix: need p >= 2");
  require(data.n() >= 3, "multivariate_matrix: need n >= 3");
  const DataMatrix z = standardize_by_mad(data);
  const SscmEstimate s = sscm_auto(z);
  const EigenDecomposition eig = sym_eigen(s.matrix);

  // Eigenvalues at rounding level belong to the null space (n < p, or ties at
  // the centre); zero them so the map treats them as exact zeros.
  Vector delta = eig.eigenvalues;
  const double floor = 1e-13 * static_cast<double>(data.p()) * delta.maxCoeff();
  delta = (delta.array() <= floor).select(0.0, delta);

  const InverseResult inv = inverse(SignSpectrum::normalized(delta), options);
  const SymmetricMatrix v = eig.reconstruct(inv.lambda.values());
  SymmetricMatrix r = [&] {
    try {
      return to_correlation(v);
    } catch (const DegenerateScale& e) {
      throw DegenerateData(std::string("multivariate_matrix: ") + e.what());
    }
  }();
  Matrix clipped = r.matrix().cwiseMax(-1.0).cwiseMin(1.0);
  return {SymmetricMatrix(clipped), MatrixMethod::multivariate, v, inv.lambda, inv.iterations};
}

CorrelationMatrixEstimate moment_matrix(const DataMatrix& data) {
  require(data.n() >= 2, "moment_matrix: need n >= 2");
  const Matrix centered = data.values().rowwise() - data.values().colwise().mean();
  const Matrix cov = centered.transpose() * centered;
  for (Eigen::Index j = 0; j < data.p(); ++j) {
    if (!(cov(j, j) > 0.0)) {
      throw DegenerateScale("column " + std::to_string(j) + " has zero variance",
                            static_cast<std::size_t>(j));
    }
  }
  SymmetricMatrix r = to_correlation(SymmetricMatrix(cov));
  Matrix clipped = r.matrix().cwiseMax(-1.0).cwiseMin(1.0);
  return {SymmetricMatrix(clipped), MatrixMethod::moment, std::nullopt, std::nullopt, 0};
}

}  // namespace spatialsign
