#include <cmath>

#include <gtest/gtest.h>

#include "spatialsign/eigenmap.hpp"
#include "spatialsign/error.hpp"
#include "spatialsign/sscm.hpp"
#include "test_support.hpp"

namespace spatialsign {
namespace {

TEST(Sscm, SignsOnOneAxis) {
  const DataMatrix d(Matrix{{1.0, 0.0}, {-1.0, 0.0}});
  const auto s = sscm(d, Vector::Zero(2));
  EXPECT_EQ(s.matrix.matrix(), (Matrix{{1.0, 0.0}, {0.0, 0.0}}));
  EXPECT_EQ(s.n_effective, 2);
}

TEST(Sscm, SymmetricCross) {
  const DataMatrix d(Matrix{{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}});
  EXPECT_EQ(sscm(d, Vector::Zero(2)).matrix.matrix(), (Matrix{{0.5, 0.0}, {0.0, 0.5}}));
  EXPECT_LE((sscm_auto(d).matrix.matrix() - Matrix{{0.5, 0.0}, {0.0, 0.5}}).cwiseAbs().maxCoeff(),
            1e-12);
}

TEST(Sscm, DiagonalPair) {
  // s = (1,1)/sqrt(2) for both points, outer product has all entries 1/2.
  const DataMatrix d(Matrix{{1.0, 1.0}, {-1.0, -1.0}});
  const Matrix m = sscm(d, Vector::Zero(2)).matrix.matrix();
  EXPECT_LE((m - Matrix::Constant(2, 2, 0.5)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Sscm, ObservationAtCentreDropsOut) {
  // Five points whose spatial median is the duplicated origin.
  const DataMatrix d(Matrix{{0.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}, {0.0, 2.0}, {0.0, -2.0}});
  const auto s = sscm_auto(d);
  EXPECT_EQ(s.n_effective, 4);
  EXPECT_NEAR(s.matrix.matrix().trace(), 4.0 / 5.0, 1e-15);
}

TEST(SscmAuto, EqualsTwoStepComposition) {
  Rng rng(9);
  const DataMatrix d(testing::gaussian_matrix(50, 3, rng));
  const auto a = sscm_auto(d);
  const auto b = sscm(d, spatial_median(d));
  EXPECT_EQ(a.matrix.matrix(), b.matrix.matrix());
  EXPECT_THROW(sscm_auto(DataMatrix(Matrix{{1.0, 2.0}})), InvalidInput);
}

TEST(Sscm, DimensionMismatch) {
  EXPECT_THROW(sscm(DataMatrix(Matrix::Ones(3, 2)), Vector::Zero(3)), InvalidInput);
}

TEST(SscmProperty, TraceOnePsdAndEquivariance) {
  Rng rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index p = 2 + static_cast<Eigen::Index>(rng.uniform() * 5);
    const Matrix x = testing::gaussian_matrix(30, p, rng);
    Vector t(p);
    for (Eigen::Index j = 0; j < p; ++j) t(j) = 0.3 * rng.normal();
    const auto s = sscm(DataMatrix(x), t);
    EXPECT_NEAR(s.matrix.matrix().trace(), 1.0, 1e-14);
    EXPECT_GE(sym_eigen(s.matrix).eigenvalues.minCoeff(), -1e-12);

    const Matrix q = testing::random_orthogonal(p, rng);
    const auto rotated = sscm(DataMatrix(x * q.transpose()), q * t);
    EXPECT_LE((rotated.matrix.matrix() - q * s.matrix.matrix() * q.transpose())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-10);

    // Power-of-two scaling is exact in floating point.
    const auto scaled = sscm(DataMatrix(8.0 * x), 8.0 * t);
    EXPECT_EQ(scaled.matrix.matrix(), s.matrix.matrix());
    const auto scaled_general = sscm(DataMatrix(3.7 * x), 3.7 * t);
    EXPECT_LE((scaled_general.matrix.matrix() - s.matrix.matrix()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Sscm, ConsistentForBivariateNormal) {
  // lambda = (0.8, 0.2) -> delta = (2/3, 1/3) in closed form.
  Rng rng(20240101);
  Matrix x(50'000, 2);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    x(i, 0) = std::sqrt(0.8) * rng.normal();
    x(i, 1) = std::sqrt(0.2) * rng.normal();
  }
  const auto ev = sym_eigen(sscm_auto(DataMatrix(x)).matrix).eigenvalues;
  EXPECT_NEAR(ev(0), 2.0 / 3.0, 0.01);
  EXPECT_NEAR(ev(1), 1.0 / 3.0, 0.01);
}

}  // namespace
}  // namespace spatialsign
