#include <cmath>

#include <gtest/gtest.h>

#include "spatialsign/correlation.hpp"
#include "spatialsign/elliptical.hpp"
#include "spatialsign/error.hpp"
#include "test_support.hpp"

namespace spatialsign {
namespace {

DataMatrix bivariate_normal(double rho, double s1, double s2, Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  const SymmetricMatrix shape(Matrix{{s1 * s1, rho * s1 * s2}, {rho * s1 * s2, s2 * s2}});
  return sample(EllipticalModel(Family::normal, Vector::Zero(2), shape), n, rng);
}

DataMatrix cross() {
  return DataMatrix(Matrix{{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}});
}

// Small integer data whose pairwise estimate has a clearly negative eigenvalue.
DataMatrix non_psd_pairwise_data() {
  Matrix x(5, 4);
  x << -1, 3, 0, -1,
       -2, -1, 2, 0,
        2, 3, 0, -3,
        3, 2, 1, -5,
        8, 7, 2, 3;
  return DataMatrix(x);
}

TEST(Sscor, SymmetricCrossIsUncorrelated) {
  EXPECT_NEAR(sscor(cross()).rho, 0.0, 1e-12);
  EXPECT_NEAR(sscor_two_stage(cross()).rho, 0.0, 1e-12);
}

TEST(Sscor, NearLineGivesNearOne) {
  Rng rng(1);
  Matrix x(200, 2);
  for (Eigen::Index i = 0; i < 200; ++i) {
    const double t = rng.normal();
    x(i, 0) = t + 1e-3 * rng.normal();
    x(i, 1) = t + 1e-3 * rng.normal();
  }
  EXPECT_GT(sscor(DataMatrix(x)).rho, 0.99);
}

TEST(Sscor, ConsistentAtBivariateNormal) {
  EXPECT_NEAR(sscor(bivariate_normal(0.5, 1.0, 1.0, 50'000, 5)).rho, 0.5, 0.02);
}

TEST(Sscor, AxisAlignedSignsAreDegenerate) {
  const DataMatrix d(Matrix{{1.0, 0.0}, {-1.0, 0.0}, {2.0, 0.0}, {-3.0, 0.0}});
  EXPECT_THROW(sscor(d), DegenerateData);
}

TEST(Sscor, Preconditions) {
  EXPECT_THROW(sscor(DataMatrix(Matrix::Ones(5, 3))), InvalidInput);
  EXPECT_THROW(sscor(DataMatrix(Matrix{{1.0, 2.0}, {3.0, 4.0}})), InvalidInput);
}

TEST(Sscor, InvariantUnderCommonPositiveScaling) {
  Rng rng(2);
  const Matrix x = testing::gaussian_matrix(60, 2, rng);
  const double r = sscor(DataMatrix(x)).rho;
  EXPECT_EQ(sscor(DataMatrix(4.0 * x)).rho, r);
  EXPECT_NEAR(sscor(DataMatrix(3.3 * x)).rho, r, 1e-13);
}

TEST(SscorTwoStage, ColumnScaleInvariance) {
  const DataMatrix d = bivariate_normal(0.3, 1.0, 1.0, 300, 3);
  Matrix scaled = d.values();
  scaled.col(1) *= 1000.0;
  EXPECT_NEAR(sscor_two_stage(DataMatrix(scaled)).rho, sscor_two_stage(d).rho, 1e-12);
}

TEST(SscorTwoStage, ConsistentWithUnequalScales) {
  const auto est = sscor_two_stage(bivariate_normal(0.5, 1.0, 100.0, 50'000, 4));
  EXPECT_NEAR(est.rho, 0.5, 0.02);
  EXPECT_EQ(est.method, CorrelationMethod::two_stage);
  EXPECT_EQ(est.n, 50'000);
}

TEST(SscorTwoStage, ConstantColumnIsDegenerateScale) {
  const DataMatrix d(Matrix{{1.0, 5.0}, {2.0, 5.0}, {3.0, 5.0}, {4.0, 5.0}});
  try {
    sscor_two_stage(d);
    FAIL() << "expected DegenerateScale";
  } catch (const DegenerateScale& e) {
    EXPECT_EQ(e.index(), 1u);
  }
}

TEST(Asv, Examples) {
  EXPECT_DOUBLE_EQ(asv_sscor(0.0, 1.0), 2.0);
  EXPECT_EQ(asv_sscor(1.0, 7.0), 0.0);
  EXPECT_DOUBLE_EQ(asv_sscor(0.0, 4.0), 3.125);
  EXPECT_DOUBLE_EQ(asv_two_stage(0.0), 2.0);
  EXPECT_EQ(asv_two_stage(1.0), 0.0);
  EXPECT_NEAR(asv_two_stage(0.6), 0.9216, 1e-15);
  EXPECT_THROW(asv_sscor(0.0, 0.0), InvalidInput);
  EXPECT_THROW(asv_sscor(1.5, 1.0), InvalidInput);
}

TEST(AsvProperty, MinimalAtEqualScalesAndSymmetricInRatio) {
  Rng rng(6);
  for (int k = 0; k < 500; ++k) {
    const double rho = 2.0 * rng.uniform() - 1.0;
    const double a = std::exp(6.0 * (rng.uniform() - 0.5));
    EXPECT_GE(asv_sscor(rho, a), asv_sscor(rho, 1.0));
    EXPECT_NEAR(asv_sscor(rho, a), asv_sscor(rho, 1.0 / a), 1e-14);
    EXPECT_DOUBLE_EQ(asv_two_stage(rho), asv_sscor(rho, 1.0));
  }
  for (double a : {0.125, 0.5, 2.0, 64.0}) {
    EXPECT_EQ(asv_sscor(0.3, a), asv_sscor(0.3, 1.0 / a));
  }
}

TEST(ConfidenceInterval, WaldExamples) {
  // 1.959963985 * sqrt(2 / 100)
  const auto ci = confidence_interval({0.0, CorrelationMethod::two_stage, 100}, 0.95);
  EXPECT_NEAR(ci.upper, 0.27718, 1e-5);
  EXPECT_NEAR(ci.lower, -0.27718, 1e-5);
  EXPECT_EQ(ci.level, 0.95);
  const auto one = confidence_interval({1.0, CorrelationMethod::two_stage, 50}, 0.9);
  EXPECT_EQ(one.lower, 1.0);
  EXPECT_EQ(one.upper, 1.0);
  const auto clipped = confidence_interval({0.95, CorrelationMethod::two_stage, 3}, 0.99);
  EXPECT_EQ(clipped.upper, 1.0);
  EXPECT_THROW(confidence_interval({0.0, CorrelationMethod::sscor, 100}, 0.95), InvalidInput);
  EXPECT_THROW(confidence_interval({0.0, CorrelationMethod::two_stage, 100}, 1.0), InvalidInput);
}

TEST(PairwiseMatrix, BivariateEqualsTwoStage) {
  const DataMatrix d = bivariate_normal(-0.4, 2.0, 0.5, 400, 7);
  const auto m = pairwise_matrix(d);
  EXPECT_EQ(m.matrix(0, 1), sscor_two_stage(d).rho);
  EXPECT_EQ(m.matrix(0, 0), 1.0);
  EXPECT_EQ(m.method, MatrixMethod::pairwise);
}

TEST(PairwiseMatrix, IndependentSphericalNearZero) {
  Rng rng(8);
  const auto m = pairwise_matrix(sample(EllipticalModel::spherical(Family::normal, 3), 50'000, rng));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) EXPECT_NEAR(m.matrix(i, j), 0.0, 0.02);
}

TEST(PairwiseMatrix, NoisyDuplicateColumnNearOne) {
  Rng rng(9);
  Matrix x = testing::gaussian_matrix(500, 3, rng);
  for (Eigen::Index i = 0; i < 500; ++i) x(i, 2) = x(i, 0) + 1e-3 * rng.normal();
  const auto m = pairwise_matrix(DataMatrix(x));
  EXPECT_GT(m.matrix(0, 2), 0.99);
}

TEST(PairwiseMatrix, NotNecessarilyPsd) {
  const auto m = pairwise_matrix(non_psd_pairwise_data());
  EXPECT_LT(sym_eigen(m.matrix).eigenvalues.minCoeff(), -1e-6);
  const auto mv = multivariate_matrix(non_psd_pairwise_data());
  EXPECT_GE(sym_eigen(mv.matrix).eigenvalues.minCoeff(), -1e-10);
}

TEST(PairwiseMatrix, DegeneratePairNamesIndices) {
  // Columns 1 and 2 only ever move along one axis at a time.
  const Matrix x{{1, 2, 0}, {2, -1, 0}, {3, 0, 1}, {4, 0, -1}, {5, 3, 0}, {6, 0, 2}};
  try {
    pairwise_matrix(DataMatrix(x));
  } catch (const DegenerateData& e) {
    EXPECT_NE(std::string(e.what()).find("pair ("), std::string::npos);
  } catch (const DegenerateScale&) {
  }
}

TEST(MultivariateMatrix, AgreesWithTwoStageForP2) {
  Rng rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const double rho = 1.6 * rng.uniform() - 0.8;
    const DataMatrix d = bivariate_normal(rho, 1.0, 3.0, 200, 100 + trial);
    const auto m = multivariate_matrix(d);
    EXPECT_NEAR(m.matrix(0, 1), sscor_two_stage(d).rho, 1e-10);
  }
}

TEST(MultivariateMatrix, IndependentSphericalNearZero) {
  Rng rng(11);
  const auto m =
      multivariate_matrix(sample(EllipticalModel::spherical(Family::normal, 5), 50'000, rng));
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) EXPECT_NEAR(m.matrix(i, j), 0.0, 0.02);
  ASSERT_TRUE(m.shape.has_value());
  ASSERT_TRUE(m.lambdas.has_value());
  EXPECT_EQ(m.lambdas->size(), 5);
  EXPECT_GT(m.fixed_point_iterations, 0u);
}

TEST(MultivariateMatrix, PerfectlyCorrelatedPairInP3) {
  Rng rng(12);
  Matrix x = testing::gaussian_matrix(300, 3, rng);
  x.col(1) = 2.0 * x.col(0);
  const auto m = multivariate_matrix(DataMatrix(x));
  EXPECT_GT(m.matrix(0, 1), 0.999);
  EXPECT_GE(sym_eigen(m.matrix).eigenvalues.minCoeff(), -1e-10);
}

TEST(MultivariateMatrix, MoreVariablesThanObservations) {
  Rng rng(13);
  const auto m = multivariate_matrix(DataMatrix(testing::gaussian_matrix(6, 4, rng)));
  EXPECT_GE(sym_eigen(m.matrix).eigenvalues.minCoeff(), -1e-10);
}

TEST(MultivariateMatrixProperty, SymmetricUnitDiagonalPsd) {
  Rng rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index p = 2 + trial % 6;
    const auto fam = static_cast<Family>(trial % 3);
    const DataMatrix d = sample(EllipticalModel::spherical(fam, p, 5.0), 50, rng);
    for (const auto& m : {multivariate_matrix(d), pairwise_matrix(d)}) {
      EXPECT_EQ(m.matrix.matrix(), m.matrix.matrix().transpose());
      EXPECT_TRUE((m.matrix.matrix().diagonal().array() == 1.0).all());
      EXPECT_LE(m.matrix.matrix().cwiseAbs().maxCoeff(), 1.0);
    }
    EXPECT_GE(sym_eigen(multivariate_matrix(d).matrix).eigenvalues.minCoeff(), -1e-10);
  }
}

TEST(MomentMatrix, Examples) {
  const auto lin = moment_matrix(DataMatrix(Matrix{{0, 1}, {1, 3}, {2, 5}, {3, 7}}));
  EXPECT_NEAR(lin.matrix(0, 1), 1.0, 1e-15);
  const auto anti = moment_matrix(DataMatrix(Matrix{{0, 1}, {1, -1}, {2, -3}}));
  EXPECT_NEAR(anti.matrix(0, 1), -1.0, 1e-15);
  // Deviations x: (-1.5, -0.5, 0.5, 1.5), y: (-0.5, 0.5, 0.5, -0.5); cross products cancel.
  const auto zero = moment_matrix(DataMatrix(Matrix{{0, 0}, {1, 1}, {2, 1}, {3, 0}}));
  EXPECT_NEAR(zero.matrix(0, 1), 0.0, 1e-15);
  // {(0,0),(1,1),(2,0),(3,1)}: cov sum 1, var sums 5 and 1, r = 1/sqrt(5).
  const auto r = moment_matrix(DataMatrix(Matrix{{0, 0}, {1, 1}, {2, 0}, {3, 1}}));
  EXPECT_NEAR(r.matrix(0, 1), 1.0 / std::sqrt(5.0), 1e-15);
}

TEST(MomentMatrix, ZeroVarianceColumn) {
  EXPECT_THROW(moment_matrix(DataMatrix(Matrix{{0, 1}, {1, 1}, {2, 1}})), DegenerateScale);
}

}  // namespace
}  // namespace spatialsign
