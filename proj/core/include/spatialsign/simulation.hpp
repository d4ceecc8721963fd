#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "spatialsign/eigenmap.hpp"
#include "spatialsign/elliptical.hpp"

namespace spatialsign {

/// Generator family of the study: normal, t with 5 or 10 df, Laplace.
struct Distribution {
  Family family = Family::normal;
  double df = 0.0;

  /// Accepts "normal", "laplace" and "t<df>" (e.g. "t5").
  static Distribution parse(std::string_view name);
  std::string name() const;
};

enum class Estimator { moment, pairwise, multivariate };

std::string_view to_string(Estimator e) noexcept;
Estimator parse_estimator(std::string_view name);

struct ExperimentConfig {
  Distribution distribution;
  Eigen::Index p = 2;
  Eigen::Index n = 100;
  std::size_t reps = 10'000;
  std::uint64_t seed = 1;
  std::vector<Estimator> estimators{Estimator::moment, Estimator::pairwise,
                                    Estimator::multivariate};
  /// Worker count; 0 means std::thread::hardware_concurrency().
  unsigned threads = 1;
};

/// Scaled variance n * Var(r_12) of one estimator over the replications.
struct EstimatorSummary {
  Estimator estimator;
  double scaled_variance;
  /// Monte Carlo standard error of scaled_variance, from the fourth moment.
  double mc_stderr;
  std::size_t reps_ok;
  std::size_t reps_failed;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<EstimatorSummary> summaries;
};

/// Monte Carlo variance study at the identity shape. Replication r draws its
/// sample from Rng::for_stream(seed, r), so results do not depend on the
/// number of workers. Failed replications are counted, never dropped silently;
/// throws Error when an estimator has fewer than two successful replications.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Entry (1,2) of the estimate for one replication; throwing Error marks the
/// replication as failed for that estimator.
using EntryFunction = std::function<double(Estimator, const DataMatrix&)>;

/// run_experiment() with a caller-supplied estimator, e.g. for instrumented runs.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const EntryFunction& entry);

/// Columns: family,p,n,estimator,scaled_variance,mc_stderr,reps,reps_failed.
void write_csv(std::ostream& os, const ExperimentResult& result, bool header = true);
void write_table(std::ostream& os, const ExperimentResult& result);

enum class ScenarioKind { equidistant, spiked };

struct EigenScenario {
  ScenarioKind kind;
  Eigen::Index p;
  ShapeSpectrum spectrum;
};

/// Equidistant: lambda_i proportional to i. Spiked: p - 1 equidistant values
/// and a top eigenvalue five times the largest of them. Both trace one.
EigenScenario eigen_scenario(ScenarioKind kind, Eigen::Index p);

struct FigureRow {
  Eigen::Index index;
  double lambda;
  double delta;
};

/// (i, lambda_i, delta_i) with delta = forward(lambda), in descending order.
std::vector<FigureRow> figure_table(ScenarioKind kind, Eigen::Index p);

void write_figure_csv(std::ostream& os, const std::vector<FigureRow>& rows);

}  // namespace spatialsign
