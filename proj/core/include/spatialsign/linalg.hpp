#pragma once

#include <Eigen/Dense>

namespace spatialsign {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense symmetric matrix. The constructor stores (A + A^T) / 2 so that the
/// stored entries are exactly symmetric.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(const Matrix& a);

  static SymmetricMatrix identity(Eigen::Index p);
  static SymmetricMatrix diagonal(const Vector& d);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  Matrix m_;
};

/// Eigenvalues in descending order, eigenvector k in column k.
struct EigenDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;

  /// U diag(values) U^T for a replacement spectrum in the same basis.
  SymmetricMatrix reconstruct(const Vector& values) const;
};

/// Symmetric eigendecomposition. Each eigenvector is signed so that its
/// largest-magnitude component is positive. Throws InvalidInput on non-finite
/// entries.
EigenDecomposition sym_eigen(const SymmetricMatrix& a);

/// r_ij = v_ij / sqrt(v_ii v_jj). Throws DegenerateScale naming the first
/// nonpositive diagonal entry.
SymmetricMatrix to_correlation(const SymmetricMatrix& v);

}  // namespace spatialsign
