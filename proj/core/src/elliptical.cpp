#include "spatialsign/elliptical.hpp"

#include <cmath>

#include "spatialsign/error.hpp"

namespace spatialsign {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

Rng Rng::for_stream(std::uint64_t master, std::uint64_t index) {
  return Rng(splitmix64(master ^ splitmix64(index + 1)));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  has_spare_ = true;
  return u * f;
}

double Rng::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0)) {
    throw InvalidInput("gamma: shape and scale must be positive");
  }
  if (shape < 1.0) {
    // G(a) = G(a + 1) U^(1/a)
    double u = uniform();
    while (u == 0.0) u = uniform();
    return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
  }
}

EllipticalModel::EllipticalModel(Family family, LocationVector location,
                                 const SymmetricMatrix& shape, double df)
    : family_(family), df_(df), location_(std::move(location)) {
  if (location_.size() != shape.dim()) {
    throw InvalidInput("EllipticalModel: location and shape dimensions differ");
  }
  if (!location_.allFinite()) throw InvalidInput("EllipticalModel: non-finite location");
  if (family_ == Family::t && !(df_ > 0.0)) {
    throw InvalidInput("EllipticalModel: t family needs df > 0");
  }
  Eigen::LLT<Matrix> llt(shape.matrix());
  if (llt.info() != Eigen::Success) {
    throw InvalidInput("EllipticalModel: shape matrix is not positive definite");
  }
  factor_ = llt.matrixL();
}

EllipticalModel EllipticalModel::spherical(Family family, Eigen::Index p, double df) {
  return EllipticalModel(family, Vector::Zero(p), SymmetricMatrix::identity(p), df);
}

Vector sample_sphere(Eigen::Index p, Rng& rng) {
  if (p < 1) throw InvalidInput("sample_sphere: need p >= 1");
  Vector z(p);
  double r = 0.0;
  do {
    for (Eigen::Index k = 0; k < p; ++k) z(k) = rng.normal();
    r = z.norm();
  } while (r == 0.0);
  return z / r;
}

DataMatrix sample(const EllipticalModel& model, Eigen::Index n, Rng& rng) {
  if (n < 1) throw InvalidInput("sample: need n >= 1");
  const Eigen::Index p = model.dim();
  Matrix x(n, p);
  Vector z(p);
  for (Eigen::Index i = 0; i < n; ++i) {
    switch (model.family()) {
      case Family::normal:
        for (Eigen::Index k = 0; k < p; ++k) z(k) = rng.normal();
        break;
      case Family::t: {
        for (Eigen::Index k = 0; k < p; ++k) z(k) = rng.normal();
        z /= std::sqrt(rng.chi_square(model.df()) / model.df());
        break;
      }
      case Family::laplace: {
        const double radius = rng.gamma(static_cast<double>(p), 2.0);
        z = radius * sample_sphere(p, rng);
        break;
      }
    }
    x.row(i) = (model.location() + model.cholesky_factor() * z).transpose();
  }
  return DataMatrix(std::move(x));
}

}  // namespace spatialsign
