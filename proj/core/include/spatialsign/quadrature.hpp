#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include <Eigen/Dense>

namespace spatialsign::quadrature {

/// Gauss-Kronrod 7/15 abscissae on [-1, 1] (non-negative half, descending).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Result {
  Eigen::VectorXd value;
  Eigen::VectorXd error;
  std::size_t intervals = 0;
  bool converged = false;
};

struct Options {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  std::size_t initial_panels = 16;
  std::size_t max_intervals = 4000;
};

namespace detail {

struct Panel {
  double a, b;
  Eigen::VectorXd value, error;
  double worst;  // largest error relative to its component's tolerance scale
};

template <class F>
Panel gauss_kronrod_15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  Eigen::VectorXd centre = f(c);
  Eigen::VectorXd kronrod = kKronrodWeights[7] * centre;
  Eigen::VectorXd gauss = kGaussWeights[3] * centre;
  for (std::size_t k = 0; k < 7; ++k) {
    const double dx = h * kKronrodNodes[k];
    const Eigen::VectorXd sum = f(c - dx) + f(c + dx);
    kronrod += kKronrodWeights[k] * sum;
    if (k % 2 == 1) gauss += kGaussWeights[k / 2] * sum;
  }
  return Panel{a, b, h * kronrod, (h * (kronrod - gauss)).cwiseAbs(), 0.0};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of a vector-valued integrand
/// over [a, b]. The panel with the largest error is bisected until every
/// component satisfies error_i <= max(abs_tol, rel_tol * |value_i|).
/// The integrand is never evaluated at the end points.
template <class F>
Result integrate(F&& f, double a, double b, Eigen::Index dim, const Options& opt = {}) {
  using detail::Panel;
  auto cmp = [](const Panel& x, const Panel& y) { return x.worst < y.worst; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);

  Result res{Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Zero(dim), 0, false};
  const double width = (b - a) / static_cast<double>(opt.initial_panels);
  std::vector<Panel> panels;
  for (std::size_t k = 0; k < opt.initial_panels; ++k) {
    const double lo = a + static_cast<double>(k) * width;
    const double hi = (k + 1 == opt.initial_panels) ? b : lo + width;
    panels.push_back(detail::gauss_kronrod_15(f, lo, hi));
  }

  auto tolerance = [&](const Eigen::VectorXd& total) {
    return (opt.rel_tol * total.cwiseAbs()).cwiseMax(opt.abs_tol).eval();
  };

  for (auto& pnl : panels) {
    res.value += pnl.value;
    res.error += pnl.error;
  }
  Eigen::VectorXd tol = tolerance(res.value);
  for (auto& pnl : panels) {
    pnl.worst = pnl.error.cwiseQuotient(tol).maxCoeff();
    heap.push(std::move(pnl));
  }
  res.intervals = heap.size();

  while (true) {
    tol = tolerance(res.value);
    if ((res.error.array() <= tol.array()).all()) {
      res.converged = true;
      break;
    }
    if (res.intervals >= opt.max_intervals) break;
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = detail::gauss_kronrod_15(f, worst.a, mid);
    Panel right = detail::gauss_kronrod_15(f, mid, worst.b);
    res.value += left.value + right.value - worst.value;
    res.error += left.error + right.error - worst.error;
    left.worst = left.error.cwiseQuotient(tol).maxCoeff();
    right.worst = right.error.cwiseQuotient(tol).maxCoeff();
    heap.push(std::move(left));
    heap.push(std::move(right));
    ++res.intervals;
  }

  // Re-sum from the panels so the running updates leave no drift behind.
  res.value.setZero();
  res.error.setZero();
  std::vector<Panel> final_panels;
  final_panels.reserve(heap.size());
  while (!heap.empty()) {
    final_panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(final_panels.begin(), final_panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const auto& pnl : final_panels) {
    res.value += pnl.value;
    res.error += pnl.error;
  }
  return res;
}

}  // namespace spatialsign::quadrature
