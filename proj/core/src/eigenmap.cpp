#include "spatialsign/eigenmap.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "spatialsign/error.hpp"
#include "spatialsign/quadrature.hpp"

namespace spatialsign {

namespace {

constexpr double kNegativeSlack = 1e-12;
constexpr double kSumSlack = 1e-9;

Vector sorted_descending(Vector v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

template <class Tag>
Spectrum<Tag>::Spectrum(const Vector& values) {
  if (values.size() < 1) throw InvalidInput("spectrum: empty");
  if (!values.allFinite()) throw InvalidInput("spectrum: non-finite value");
  if (values.minCoeff() < -kNegativeSlack) {
    throw InvalidInput("spectrum: negative value " + std::to_string(values.minCoeff()));
  }
  Vector v = values.cwiseMax(0.0);
  const double sum = v.sum();
  if (std::abs(sum - 1.0) > kSumSlack) {
    throw InvalidInput("spectrum: values sum to " + std::to_string(sum) + ", expected 1");
  }
  v_ = sorted_descending(v / sum);
}

template <class Tag>
Spectrum<Tag>::Spectrum(std::span<const double> values)
    : Spectrum(Vector(Eigen::Map<const Vector>(values.data(),
                                               static_cast<Eigen::Index>(values.size())))) {}

template <class Tag>
Spectrum<Tag> Spectrum<Tag>::normalized(const Vector& values) {
  if (values.size() < 1) throw InvalidInput("spectrum: empty");
  if (!values.allFinite()) throw InvalidInput("spectrum: non-finite value");
  const double scale = values.cwiseAbs().maxCoeff();
  if (values.minCoeff() < -kNegativeSlack * std::max(1.0, scale)) {
    throw InvalidInput("spectrum: negative value " + std::to_string(values.minCoeff()));
  }
  Vector v = values.cwiseMax(0.0);
  const double sum = v.sum();
  if (!(sum > 0.0)) throw InvalidInput("spectrum: all values are zero");
  return Spectrum(sorted_descending(v / sum), Trusted{});
}

template <class Tag>
Eigen::Index Spectrum<Tag>::nonzero_count() const noexcept {
  return (v_.array() > 0.0).count();
}

template class Spectrum<detail::ShapeTag>;
template class Spectrum<detail::SignTag>;

SignSpectrum forward_p2(const ShapeSpectrum& lambda) {
  if (lambda.size() != 2) throw InvalidInput("forward_p2: expected p = 2");
  const double a = std::sqrt(lambda[0]);
  const double b = std::sqrt(lambda[1]);
  return SignSpectrum::normalized(Vector{{a / (a + b), b / (a + b)}});
}

ShapeSpectrum inverse_p2(const SignSpectrum& delta) {
  if (delta.size() != 2) throw InvalidInput("inverse_p2: expected p = 2");
  const double a = delta[0] * delta[0];
  const double b = delta[1] * delta[1];
  return ShapeSpectrum::normalized(Vector{{a / (a + b), b / (a + b)}});
}

Vector sign_integrals(const Vector& lambda) {
  std::vector<Eigen::Index> active;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > 0.0) active.push_back(i);
  }
  if (active.size() < 2) {
    throw RankDeficient("sign integrals need at least two positive eigenvalues, got " +
                        std::to_string(active.size()));
  }
  const auto k = static_cast<Eigen::Index>(active.size());
  Vector lam(k);
  for (Eigen::Index a = 0; a < k; ++a) lam(a) = lambda(active[static_cast<std::size_t>(a)]);

  // The integrand changes shape between x ~ 1/lambda_max and x ~ 1/lambda_min;
  // centre the map t -> x at the geometric mean of those scales.
  const double scale = 1.0 / std::sqrt(lam.maxCoeff() * lam.minCoeff());

  auto integrand = [&](double t) -> Vector {
    const double one_minus = 1.0 - t;
    const double x = scale * t / one_minus;
    const double jacobian = scale / (one_minus * one_minus);
    double log_common = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) log_common += std::log1p(lam(j) * x);
    log_common *= 0.5;
    Vector out(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      out(i) = jacobian * std::exp(-std::log1p(lam(i) * x) - log_common);
    }
    return out;
  };

  quadrature::Options opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-13;
  const auto res = quadrature::integrate(integrand, 0.0, 1.0, k, opt);
  // The relative target sits near the rounding floor, so accept a result
  // that missed it by a small margin; anything worse is a real failure.
  const Vector slack = (1e-11 * res.value.cwiseAbs()).cwiseMax(1e-11);
  if (!res.converged && !(res.error.array() <= slack.array()).all()) {
    throw ConvergenceError("sign_integrals: quadrature did not reach tolerance",
                           res.intervals, res.error.maxCoeff(),
                           std::vector<double>(res.value.begin(), res.value.end()));
  }
  Vector out = Vector::Zero(lambda.size());
  for (Eigen::Index a = 0; a < k; ++a) out(active[static_cast<std::size_t>(a)]) = res.value(a);
  return out;
}

SignSpectrum forward(const ShapeSpectrum& lambda) {
  if (lambda.size() < 2) throw InvalidInput("forward: need p >= 2");
  if (lambda.nonzero_count() == 1) return SignSpectrum(lambda.values());
  const Vector integrals = sign_integrals(lambda.values());
  const Vector delta = 0.5 * lambda.values().cwiseProduct(integrals);
  const double drift = std::abs(delta.sum() - 1.0);
  if (drift > 1e-9) {
    throw InvariantViolation("forward: eigenvalues sum to 1 + " + std::to_string(drift));
  }
  return SignSpectrum::normalized(delta);
}

InverseResult inverse(const SignSpectrum& delta, const InverseOptions& options) {
  if (delta.size() < 2) throw InvalidInput("inverse: need p >= 2");
  if (delta.nonzero_count() < 2) {
    throw RankDeficient("inverse: need at least two nonzero eigenvalues");
  }
  const Vector& d = delta.values();
  Vector lambda = d;
  double change = 0.0;
  for (std::size_t iter = 1; iter <= options.max_iterations; ++iter) {
    const Vector integrals = sign_integrals(lambda);
    Vector next = Vector::Zero(d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      if (d(i) > 0.0) next(i) = 2.0 * d(i) / integrals(i);
    }
    next /= next.sum();
    change = (next - lambda).cwiseAbs().maxCoeff();
    lambda = next;
    if (change <= options.tolerance) {
      return InverseResult{ShapeSpectrum::normalized(lambda), iter, change};
    }
  }
  throw ConvergenceError("inverse: fixed point did not converge in " +
                             std::to_string(options.max_iterations) + " iterations",
                         options.max_iterations, change,
                         std::vector<double>(lambda.begin(), lambda.end()));
}

}  // namespace spatialsign
