#include "spatialsign/linalg.hpp"

#include <cmath>
#include <string>

#include "spatialsign/error.hpp"

namespace spatialsign {

SymmetricMatrix::SymmetricMatrix(const Matrix& a) {
  if (a.rows() < 1 || a.rows() != a.cols()) {
    throw InvalidInput("SymmetricMatrix: expected a non-empty square matrix, got " +
                       std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  m_ = 0.5 * (a + a.transpose());
}

SymmetricMatrix SymmetricMatrix::identity(Eigen::Index p) {
  return SymmetricMatrix(Matrix::Identity(p, p));
}

SymmetricMatrix SymmetricMatrix::diagonal(const Vector& d) {
  return SymmetricMatrix(Matrix(d.asDiagonal()));
}

SymmetricMatrix EigenDecomposition::reconstruct(const Vector& values) const {
  return SymmetricMatrix(eigenvectors * values.asDiagonal() * eigenvectors.transpose());
}

EigenDecomposition sym_eigen(const SymmetricMatrix& a) {
  if (!a.matrix().allFinite()) {
    throw InvalidInput("sym_eigen: matrix has non-finite entries");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw InvalidInput("sym_eigen: eigensolver failed");
  }
  // Eigen returns ascending order; flip to descending.
  const Eigen::Index p = a.dim();
  EigenDecomposition out{Vector(p), Matrix(p, p)};
  for (Eigen::Index k = 0; k < p; ++k) {
    out.eigenvalues(k) = solver.eigenvalues()(p - 1 - k);
    Vector u = solver.eigenvectors().col(p - 1 - k);
    Eigen::Index arg = 0;
    u.cwiseAbs().maxCoeff(&arg);
    if (u(arg) < 0) u = -u;
    out.eigenvectors.col(k) = u;
  }
  return out;
}

SymmetricMatrix to_correlation(const SymmetricMatrix& v) {
  const Eigen::Index p = v.dim();
  Vector scale(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    const double d = v(i, i);
    if (!(d > 0.0)) {
      throw DegenerateScale("to_correlation: diagonal entry " + std::to_string(i) +
                                " is not positive",
                            static_cast<std::size_t>(i));
    }
    scale(i) = 1.0 / std::sqrt(d);
  }
  Matrix r = scale.asDiagonal() * v.matrix() * scale.asDiagonal();
  r.diagonal().setOnes();
  return SymmetricMatrix(r);
}

}  // namespace spatialsign
