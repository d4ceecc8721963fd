#include "spatialsign/sscm.hpp"

#include "spatialsign/error.hpp"

namespace spatialsign {

SscmEstimate sscm(const DataMatrix& data, const LocationVector& center) {
  if (center.size() != data.p()) {
    throw InvalidInput("sscm: center has dimension " + std::to_string(center.size()) +
                       ", data has " + std::to_string(data.p()));
  }
  const Eigen::Index p = data.p();
  Matrix acc = Matrix::Zero(p, p);
  Eigen::Index used = 0;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    const Vector s = spatial_sign(data.row(i).transpose(), center);
    if (s.isZero(0.0)) continue;
    acc.selfadjointView<Eigen::Lower>().rankUpdate(s);
    ++used;
  }
  acc.triangularView<Eigen::StrictlyUpper>() = acc.transpose();
  acc /= static_cast<double>(data.n());
  return SscmEstimate{SymmetricMatrix(acc), center, used};
}

SscmEstimate sscm_auto(const DataMatrix& data, const SpatialMedianOptions& options) {
  if (data.n() < 2) throw InvalidInput("sscm_auto: need n >= 2");
  return sscm(data, spatial_median(data, options));
}

}  // namespace spatialsign
