#include "spatialsign/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "spatialsign/correlation.hpp"
#include "spatialsign/error.hpp"

namespace spatialsign {

namespace {

double pearson_12(const DataMatrix& d) {
  const Vector a = d.col(0).array() - d.col(0).mean();
  const Vector b = d.col(1).array() - d.col(1).mean();
  const double den = std::sqrt(a.squaredNorm() * b.squaredNorm());
  if (!(den > 0.0)) throw DegenerateScale("zero variance column", 0);
  return std::clamp(a.dot(b) / den, -1.0, 1.0);
}

double entry_12(Estimator e, const DataMatrix& data) {
  switch (e) {
    case Estimator::moment:
      return pearson_12(data);
    case Estimator::pairwise:
      // Entry (1,2) of the pairwise matrix only involves the first two columns.
      return sscor_two_stage(data.pair(0, 1)).rho;
    case Estimator::multivariate:
      return multivariate_matrix(data).matrix(0, 1);
  }
  throw InvalidInput("unknown estimator");
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

Distribution Distribution::parse(std::string_view name) {
  if (name == "normal") return {Family::normal, 0.0};
  if (name == "laplace") return {Family::laplace, 0.0};
  if (name.size() > 1 && name.front() == 't') {
    double df = 0.0;
    const auto* first = name.data() + 1;
    const auto* last = name.data() + name.size();
    const auto [ptr, ec] = std::from_chars(first, last, df);
    if (ec == std::errc() && ptr == last && df > 0.0) return {Family::t, df};
  }
  throw InvalidInput("unknown distribution '" + std::string(name) +
                     "' (expected normal, laplace or t<df>)");
}

std::string Distribution::name() const {
  switch (family) {
    case Family::normal: return "normal";
    case Family::laplace: return "laplace";
    case Family::t: return "t" + fmt_double(df);
  }
  return "unknown";
}

std::string_view to_string(Estimator e) noexcept {
  switch (e) {
    case Estimator::moment: return "moment";
    case Estimator::pairwise: return "pairwise";
    case Estimator::multivariate: return "multivariate";
  }
  return "unknown";
}

Estimator parse_estimator(std::string_view name) {
  if (name == "moment" || name == "cor") return Estimator::moment;
  if (name == "pairwise") return Estimator::pairwise;
  if (name == "multivariate") return Estimator::multivariate;
  throw InvalidInput("unknown estimator '" + std::string(name) + "'");
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  return run_experiment(cfg, entry_12);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const EntryFunction& entry) {
  if (cfg.reps < 2) throw InvalidInput("run_experiment: need reps >= 2");
  if (cfg.p < 2) throw InvalidInput("run_experiment: need p >= 2");
  if (cfg.n < 3) throw InvalidInput("run_experiment: need n >= 3");
  if (cfg.estimators.empty()) throw InvalidInput("run_experiment: no estimators requested");

  const EllipticalModel model =
      EllipticalModel::spherical(cfg.distribution.family, cfg.p, cfg.distribution.df);
  const std::size_t k = cfg.estimators.size();
  // values[r * k + e]; empty when replication r failed for estimator e.
  std::vector<std::optional<double>> values(cfg.reps * k);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next.fetch_add(1); r < cfg.reps; r = next.fetch_add(1)) {
      Rng rng = Rng::for_stream(cfg.seed, r);
      const DataMatrix data = sample(model, cfg.n, rng);
      for (std::size_t e = 0; e < k; ++e) {
        try {
          values[r * k + e] = entry(cfg.estimators[e], data);
        } catch (const Error&) {
          values[r * k + e].reset();
        }
      }
    }
  };

  unsigned threads = cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads;
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(cfg.reps));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  ExperimentResult result{cfg, {}};
  const double n = static_cast<double>(cfg.n);
  for (std::size_t e = 0; e < k; ++e) {
    std::vector<double> ok;
    ok.reserve(cfg.reps);
    for (std::size_t r = 0; r < cfg.reps; ++r) {
      if (const auto& v = values[r * k + e]) ok.push_back(*v);
    }
    const std::size_t failed = cfg.reps - ok.size();
    if (ok.size() < 2) {
      throw Error("run_experiment: estimator '" + std::string(to_string(cfg.estimators[e])) +
                  "' failed in " + std::to_string(failed) + " of " +
                  std::to_string(cfg.reps) + " replications");
    }
    const double m = static_cast<double>(ok.size());
    double mean = 0.0;
    for (double v : ok) mean += v;
    mean /= m;
    double m2 = 0.0, m4 = 0.0;
    for (double v : ok) {
      const double d = (v - mean) * (v - mean);
      m2 += d;
      m4 += d * d;
    }
    const double var = m2 / (m - 1.0);
    m4 /= m;
    const double var_of_var = std::max(0.0, (m4 - var * var * (m - 3.0) / (m - 1.0)) / m);
    result.summaries.push_back(
        {cfg.estimators[e], n * var, n * std::sqrt(var_of_var), ok.size(), failed});
  }
  return result;
}

void write_csv(std::ostream& os, const ExperimentResult& result, bool header) {
  if (header) os << "family,p,n,estimator,scaled_variance,mc_stderr,reps,reps_failed\n";
  const auto& c = result.config;
  for (const auto& s : result.summaries) {
    os << c.distribution.name() << ',' << c.p << ',' << c.n << ',' << to_string(s.estimator)
       << ',' << fmt_double(s.scaled_variance) << ',' << fmt_double(s.mc_stderr) << ','
       << c.reps << ',' << s.reps_failed << '\n';
  }
}

void write_table(std::ostream& os, const ExperimentResult& result) {
  const auto& c = result.config;
  os << "distribution " << c.distribution.name() << ", p = " << c.p << ", n = " << c.n
     << ", reps = " << c.reps << ", seed = " << c.seed << "\n";
  os << std::left << std::setw(14) << "estimator" << std::right << std::setw(12) << "n*Var"
     << std::setw(12) << "mc s.e." << std::setw(10) << "failed" << '\n';
  for (const auto& s : result.summaries) {
    os << std::left << std::setw(14) << to_string(s.estimator) << std::right << std::fixed
       << std::setprecision(3) << std::setw(12) << s.scaled_variance << std::setw(12)
       << s.mc_stderr << std::setw(10) << s.reps_failed << '\n';
  }
  os.unsetf(std::ios::floatfield);
}

EigenScenario eigen_scenario(ScenarioKind kind, Eigen::Index p) {
  if (p < 2) throw InvalidInput("eigen_scenario: need p >= 2");
  const double pd = static_cast<double>(p);
  Vector lambda(p);
  if (kind == ScenarioKind::equidistant) {
    for (Eigen::Index i = 1; i <= p; ++i) lambda(i - 1) = 2.0 * static_cast<double>(i) / (pd * (pd + 1.0));
  } else {
    const double denom = pd * ((pd + 1.0) / 2.0 + 5.0) - 5.0;
    for (Eigen::Index i = 1; i < p; ++i) lambda(i - 1) = static_cast<double>(i) / denom;
    lambda(p - 1) = 5.0 * (pd - 1.0) / denom;
    // The displayed weights sum to 1 - p / denom; rescale to trace one.
  }
  return {kind, p, ShapeSpectrum::normalized(lambda)};
}

std::vector<FigureRow> figure_table(ScenarioKind kind, Eigen::Index p) {
  const EigenScenario sc = eigen_scenario(kind, p);
  const SignSpectrum delta = forward(sc.spectrum);
  std::vector<FigureRow> rows;
  rows.reserve(static_cast<std::size_t>(p));
  for (Eigen::Index i = 0; i < p; ++i) rows.push_back({i + 1, sc.spectrum[i], delta[i]});
  return rows;
}

void write_figure_csv(std::ostream& os, const std::vector<FigureRow>& rows) {
  os << "index,lambda,delta\n";
  for (const auto& r : rows) {
    os << r.index << ',' << fmt_double(r.lambda) << ',' << fmt_double(r.delta) << '\n';
  }
}

}  // namespace spatialsign
