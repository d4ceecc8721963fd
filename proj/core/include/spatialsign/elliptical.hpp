#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "spatialsign/linalg.hpp"
#include "spatialsign/location_scale.hpp"

namespace spatialsign {

/// Seeded 64-bit random stream.
///
/// Engine: std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The engine is seeded with splitmix64(seed). Uniforms take the top
/// 53 bits; normals use the Marsaglia polar method and gammas Marsaglia-Tsang,
/// all implemented here rather than through <random> distributions (whose
/// algorithms differ between standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent stream for task `index` under a master seed:
  /// seed = splitmix64(master ^ splitmix64(index + 1)).
  static Rng for_stream(std::uint64_t master, std::uint64_t index);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  double normal();
  /// Gamma with the given shape and scale (mean shape * scale).
  double gamma(double shape, double scale);
  double chi_square(double df) { return gamma(0.5 * df, 2.0); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

enum class Family { normal, t, laplace };

/// Elliptical law with location, positive definite shape and a generator
/// family. Laplace has generator g(x) ∝ exp(-sqrt(x) / 2), hence radius
/// Gamma(p, 2); t(df) is a Gaussian vector divided by sqrt(chi2_df / df).
class EllipticalModel {
 public:
  EllipticalModel(Family family, LocationVector location, const SymmetricMatrix& shape,
                  double df = 0.0);

  static EllipticalModel spherical(Family family, Eigen::Index p, double df = 0.0);

  Family family() const noexcept { return family_; }
  double df() const noexcept { return df_; }
  Eigen::Index dim() const noexcept { return location_.size(); }
  const LocationVector& location() const noexcept { return location_; }
  const Matrix& cholesky_factor() const noexcept { return factor_; }

 private:
  Family family_;
  double df_;
  LocationVector location_;
  Matrix factor_;
};

/// Uniform direction on the unit sphere in R^p.
Vector sample_sphere(Eigen::Index p, Rng& rng);

/// n draws X = mu + R A U, A the lower Cholesky factor of the shape.
DataMatrix sample(const EllipticalModel& model, Eigen::Index n, Rng& rng);

}  // namespace spatialsign
