#include "spatialsign/location_scale.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "spatialsign/error.hpp"

namespace spatialsign {

namespace {

constexpr double kCoincidenceRelTol = 1e-12;

bool coincides(double diff_norm, const Vector& x, const Vector& center) {
  if (diff_norm == 0.0) return true;
  const double magnitude = std::max(x.cwiseAbs().maxCoeff(), center.cwiseAbs().maxCoeff());
  return diff_norm < kCoincidenceRelTol * magnitude;
}

// Sum of signs over observations not coinciding with mu, and the number that do.
struct SignSum {
  Vector sum;
  std::size_t coincident = 0;
};

SignSum sign_sum(const Matrix& x, const Vector& mu) {
  SignSum out{Vector::Zero(x.cols()), 0};
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const Vector xi = x.row(i).transpose();
    const Vector d = xi - mu;
    const double r = d.norm();
    if (coincides(r, xi, mu)) {
      ++out.coincident;
    } else {
      out.sum += d / r;
    }
  }
  return out;
}

double objective(const Matrix& x, const Vector& mu) {
  return (x.rowwise() - mu.transpose()).rowwise().norm().sum();
}

// Weiszfeld steps shrink to nothing along directions in which the data are
// nearly degenerate (e.g. points close to a line). A Newton step on the
// objective, halved until it beats the Weiszfeld target, restores fast
// convergence there; the Weiszfeld target is kept whenever it is better, so
// the objective still decreases monotonically.
Vector newton_or_weiszfeld(const Matrix& x, const Vector& mu, const Vector& target,
                           const Vector& signs) {
  const Eigen::Index p = x.cols();
  Matrix hessian = Matrix::Zero(p, p);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const Vector d = x.row(i).transpose() - mu;
    const double r = d.norm();
    if (r == 0.0) continue;
    const Vector s = d / r;
    hessian += (Matrix::Identity(p, p) - s * s.transpose()) / r;
  }
  const Vector step = hessian.ldlt().solve(-signs);
  if (!step.allFinite()) return target;
  const double f_target = objective(x, target);
  double scale = 1.0;
  for (int k = 0; k < 30; ++k, scale *= 0.5) {
    const Vector candidate = mu - scale * step;
    const double f = objective(x, candidate);
    if (f < f_target) return candidate;
    // Close to the optimum both objectives agree to rounding; judge the full
    // step by the gradient (sign sum) instead.
    if (k == 0 && f <= f_target * (1.0 + 1e-14) &&
        sign_sum(x, candidate).sum.norm() < 0.5 * signs.norm()) {
      return candidate;
    }
  }
  return target;
}

}  // namespace

DataMatrix::DataMatrix(Matrix rows) : x_(std::move(rows)) {
  if (x_.rows() < 1 || x_.cols() < 1) {
    throw InvalidInput("DataMatrix: need n >= 1 and p >= 1");
  }
  if (!x_.allFinite()) {
    throw InvalidInput("DataMatrix: entries must be finite");
  }
}

DataMatrix DataMatrix::pair(Eigen::Index i, Eigen::Index j) const {
  Matrix out(n(), 2);
  out.col(0) = x_.col(i);
  out.col(1) = x_.col(j);
  return DataMatrix(std::move(out));
}

Vector spatial_sign(const Vector& x, const Vector& center) {
  if (x.size() != center.size()) {
    throw InvalidInput("spatial_sign: dimension mismatch");
  }
  const Vector d = x - center;
  const double r = d.norm();
  if (coincides(r, x, center)) return Vector::Zero(x.size());
  return d / r;
}

double sign_centering_residual(const DataMatrix& data, const LocationVector& mu) {
  return sign_sum(data.values(), mu).sum.norm() / static_cast<double>(data.n());
}

double spatial_median_objective(const DataMatrix& data, const LocationVector& mu) {
  return objective(data.values(), mu);
}

LocationVector spatial_median(const DataMatrix& data, const SpatialMedianOptions& options) {
  const Matrix& x = data.values();
  const Eigen::Index n = data.n();
  const Eigen::Index p = data.p();

  Vector mu(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    std::vector<double> c(x.col(j).begin(), x.col(j).end());
    mu(j) = median(c);
  }
  if (n == 1) return mu;

  double residual = 0.0;
  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    Vector weighted = Vector::Zero(p);
    Vector signs = Vector::Zero(p);
    double weight_sum = 0.0;
    std::size_t eta = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const Vector xi = x.row(i).transpose();
      const Vector d = xi - mu;
      const double r = d.norm();
      if (coincides(r, xi, mu)) {
        ++eta;
        continue;
      }
      weighted += xi / r;
      weight_sum += 1.0 / r;
      signs += d / r;
    }
    const double sign_norm = signs.norm();

    if (eta > 0 && sign_norm <= static_cast<double>(eta)) return mu;
    residual = sign_norm / static_cast<double>(n);
    if (eta == 0 && residual <= options.tolerance) return mu;

    const Vector t = weighted / weight_sum;
    if (eta == 0) {
      mu = newton_or_weiszfeld(x, mu, t, signs);
    } else {
      // Vardi-Zhang: blend the Weiszfeld target with the current data point.
      const double ratio = static_cast<double>(eta) / sign_norm;
      mu = std::max(0.0, 1.0 - ratio) * t + std::min(1.0, ratio) * mu;
    }

    // Iterates creeping towards an observation that is the optimum converge
    // slowly; test the nearest observation's optimality condition directly.
    Eigen::Index nearest = 0;
    const double dist = (x.rowwise() - mu.transpose()).rowwise().norm().minCoeff(&nearest);
    if (dist < 1e-6 * (1.0 + mu.cwiseAbs().maxCoeff())) {
      const Vector candidate = x.row(nearest).transpose();
      const SignSum at = sign_sum(x, candidate);
      if (at.sum.norm() <= static_cast<double>(at.coincident)) return candidate;
    }
  }
  throw ConvergenceError("spatial_median: no convergence after " +
                             std::to_string(options.max_iterations) +
                             " iterations (residual " + std::to_string(residual) + ")",
                         options.max_iterations, residual,
                         std::vector<double>(mu.begin(), mu.end()));
}

double median(std::span<const double> x) {
  if (x.empty()) throw InvalidInput("median: empty sequence");
  std::vector<double> v(x.begin(), x.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double mad(std::span<const double> x) {
  const double m = median(x);
  std::vector<double> dev(x.size());
  std::transform(x.begin(), x.end(), dev.begin(), [m](double v) { return std::abs(v - m); });
  const double s = median(dev);
  if (!(s > 0.0)) {
    throw DegenerateScale("mad: median absolute deviation is zero", 0);
  }
  return s;
}

}  // namespace spatialsign
