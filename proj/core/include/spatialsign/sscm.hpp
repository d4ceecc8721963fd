#pragma once

#include "spatialsign/linalg.hpp"
#include "spatialsign/location_scale.hpp"

namespace spatialsign {

/// Empirical spatial sign covariance matrix (1/n) sum_i s(X_i - t) s(X_i - t)^T.
///
/// Observations coinciding with the center contribute nothing and are not
/// counted in n_effective; the matrix is not renormalised, so its trace is
/// n_effective / n.
struct SscmEstimate {
  SymmetricMatrix matrix;
  LocationVector center;
  Eigen::Index n_effective;
};

SscmEstimate sscm(const DataMatrix& data, const LocationVector& center);

/// sscm() centred at the spatial median.
SscmEstimate sscm_auto(const DataMatrix& data, const SpatialMedianOptions& options = {});

}  // namespace spatialsign
