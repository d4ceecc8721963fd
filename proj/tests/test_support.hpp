#pragma once

#include <algorithm>
#include <functional>

#include <Eigen/Dense>

#include "spatialsign/elliptical.hpp"

namespace spatialsign::testing {

/// Haar-ish orthogonal matrix from the QR of a Gaussian matrix.
inline Matrix random_orthogonal(Eigen::Index p, Rng& rng) {
  Matrix g(p, p);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < p; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  return q;
}

/// Random trace-one spectrum, descending, with every entry >= min_value.
inline Vector random_spectrum(Eigen::Index p, Rng& rng, double min_value = 1e-4) {
  Vector v(p);
  for (Eigen::Index i = 0; i < p; ++i) v(i) = -std::log(1.0 - rng.uniform());  // Exp(1)
  // Occasionally stretch the spread over several orders of magnitude.
  if (rng.uniform() < 0.5) {
    for (Eigen::Index i = 0; i < p; ++i) v(i) = std::pow(v(i), 1.0 + 3.0 * rng.uniform());
  }
  v /= v.sum();
  v = v.cwiseMax(min_value);
  v /= v.sum();
  while (v.minCoeff() < min_value) {
    v = v.cwiseMax(min_value * 1.0001);
    v /= v.sum();
  }
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

inline Matrix gaussian_matrix(Eigen::Index n, Eigen::Index p, Rng& rng) {
  Matrix x(n, p);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j) x(i, j) = rng.normal();
  return x;
}

}  // namespace spatialsign::testing
