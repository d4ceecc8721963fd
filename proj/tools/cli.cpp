#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "csv_io.hpp"
#include "spatialsign/correlation.hpp"
#include "spatialsign/eigenmap.hpp"
#include "spatialsign/error.hpp"
#include "spatialsign/simulation.hpp"

namespace spatialsign::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EstimateArgs {
  std::string method;
  std::string input;
  std::optional<double> ci;
  std::string format = "csv";
  std::string output;
};

struct EigenmapArgs {
  std::string direction;
  std::string lambdas;
  std::string deltas;
};

struct SimulateArgs {
  std::string dist = "normal";
  long p = 2;
  long n = 100;
  long reps = 10'000;
  std::uint64_t seed = 1;
  std::optional<unsigned> threads;
  std::string estimators = "moment,pairwise,multivariate";
  bool pretty = false;
  std::string output;
};

struct FigureArgs {
  int figure = 1;
  long p = 3;
};

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_matrix_csv(std::ostream& os, const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

void write_list(std::ostream& os, const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << format_double(v(i));
  }
  os << '\n';
}

// Opens --output (or returns the fallback stream). Checked before any work.
class OutputSink {
 public:
  OutputSink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

int cmd_estimate(const EstimateArgs& a, std::ostream& out, std::ostream& err) {
  std::ifstream in(a.input);
  if (!in) throw UsageError("cannot read input file '" + a.input + "'");
  OutputSink sink(a.output, out);
  if (a.ci && a.method != "two-stage") {
    throw UsageError("--ci is only available with --method two-stage");
  }

  const CsvTable table = read_csv(in);
  const DataMatrix& data = table.data;

  std::optional<CorrelationMatrixEstimate> est;
  std::optional<ConfidenceInterval> ci;
  if (a.method == "moment") {
    est = moment_matrix(data);
  } else if (a.method == "pairwise") {
    est = pairwise_matrix(data);
  } else if (a.method == "multivariate") {
    est = multivariate_matrix(data);
  } else {
    if (data.p() != 2) {
      throw UsageError(fmt::format("two-stage needs exactly 2 columns, input has {}", data.p()));
    }
    const CorrelationEstimate r = sscor_two_stage(data);
    Matrix m{{1.0, r.rho}, {r.rho, 1.0}};
    est = CorrelationMatrixEstimate{SymmetricMatrix(m), MatrixMethod::pairwise, std::nullopt,
                                    std::nullopt, 0};
    if (a.ci) ci = confidence_interval(r, *a.ci);
  }

  std::ostream& os = sink.stream();
  if (a.format == "json") {
    json j;
    j["method"] = a.method;
    j["p"] = data.p();
    j["n"] = data.n();
    j["correlation"] = matrix_json(est->matrix.matrix());
    if (est->shape) j["shape"] = matrix_json(est->shape->matrix());
    if (est->lambdas) {
      const Vector& l = est->lambdas->values();
      j["lambdas"] = std::vector<double>(l.begin(), l.end());
    }
    if (ci) j["ci"] = {{"lower", ci->lower}, {"upper", ci->upper}, {"level", ci->level}};
    os << j.dump(2) << '\n';
  } else {
    os << "# method=" << a.method << " p=" << data.p() << " n=" << data.n() << '\n';
    os << "# correlation\n";
    write_matrix_csv(os, est->matrix.matrix());
    if (est->shape) {
      os << "# shape\n";
      write_matrix_csv(os, est->shape->matrix());
    }
    if (est->lambdas) {
      os << "# lambdas\n";
      write_list(os, est->lambdas->values());
    }
    if (ci) {
      os << "# ci\nlower,upper,level\n"
         << format_double(ci->lower) << ',' << format_double(ci->upper) << ','
         << format_double(ci->level) << '\n';
    }
  }
  (void)err;
  return kOk;
}

Vector read_spectrum(const std::string& text, std::ostream& err) {
  const std::vector<double> raw = parse_real_list(text);
  if (raw.size() < 2) throw UsageError("need at least two eigenvalues");
  Vector v = Eigen::Map<const Vector>(raw.data(), static_cast<Eigen::Index>(raw.size()));
  if (v.minCoeff() < 0.0) throw UsageError("eigenvalues must be non-negative");
  const double sum = v.sum();
  if (!(sum > 0.0)) throw UsageError("eigenvalues must not all be zero");
  if (std::abs(sum - 1.0) > 1e-9) {
    err << "warning: eigenvalues sum to " << format_double(sum) << "; normalising to 1\n";
    v /= sum;
  }
  return v;
}

int cmd_eigenmap(const EigenmapArgs& a, std::ostream& out, std::ostream& err) {
  if (a.direction == "forward") {
    if (a.lambdas.empty()) throw UsageError("forward needs --lambdas");
    const SignSpectrum d = forward(ShapeSpectrum(read_spectrum(a.lambdas, err)));
    write_list(out, d.values());
  } else {
    if (a.deltas.empty()) throw UsageError("inverse needs --deltas");
    const InverseResult r = inverse(SignSpectrum(read_spectrum(a.deltas, err)));
    write_list(out, r.lambda.values());
    out << "iterations," << r.iterations << '\n';
    out << "residual," << format_double(r.residual) << '\n';
  }
  return kOk;
}

unsigned default_threads() {
  if (const char* env = std::getenv(kThreadsEnv)) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& /*err*/) {
  if (a.reps < 2) throw UsageError("--reps must be at least 2 (variance is undefined otherwise)");
  if (a.p < 2) throw UsageError("--p must be at least 2");
  if (a.n < 3) throw UsageError("--n must be at least 3");
  OutputSink sink(a.output, out);

  ExperimentConfig cfg;
  cfg.distribution = Distribution::parse(a.dist);
  cfg.p = a.p;
  cfg.n = a.n;
  cfg.reps = static_cast<std::size_t>(a.reps);
  cfg.seed = a.seed;
  cfg.threads = a.threads.value_or(default_threads());
  cfg.estimators.clear();
  std::stringstream ss(a.estimators);
  for (std::string item; std::getline(ss, item, ',');) {
    cfg.estimators.push_back(parse_estimator(item));
  }

  const ExperimentResult res = run_experiment(cfg);
  if (a.pretty) {
    write_table(sink.stream(), res);
  } else {
    write_csv(sink.stream(), res);
  }
  return kOk;
}

int cmd_figure(const FigureArgs& a, std::ostream& out) {
  const auto kind = a.figure == 1 ? ScenarioKind::equidistant : ScenarioKind::spiked;
  write_figure_csv(out, figure_table(kind, a.p));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust correlation estimation with the spatial sign covariance matrix", "sscor"};
  app.require_subcommand(1);

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Estimate a correlation matrix from CSV data");
  estimate->add_option("--method", est.method, "Estimator")
      ->required()
      ->check(CLI::IsMember({"moment", "pairwise", "multivariate", "two-stage"}));
  estimate->add_option("--input", est.input, "CSV file, one observation per row")->required();
  estimate->add_option("--ci", est.ci, "Confidence level (two-stage only)")
      ->check(CLI::Range(0.0, 1.0));
  estimate->add_option("--format", est.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  estimate->add_option("--output", est.output, "Output file (default stdout)");

  EigenmapArgs em;
  auto* eigenmap = app.add_subcommand("eigenmap", "Map shape eigenvalues to SSCM eigenvalues or back");
  eigenmap->add_option("direction", em.direction, "forward or inverse")
      ->required()
      ->check(CLI::IsMember({"forward", "inverse"}));
  auto* lam = eigenmap->add_option("--lambdas", em.lambdas, "Shape eigenvalues L1,L2,...");
  auto* del = eigenmap->add_option("--deltas", em.deltas, "SSCM eigenvalues D1,D2,...");
  lam->excludes(del);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo variance study at the identity shape");
  simulate->add_option("--dist", sim.dist, "normal, t5, t10 or laplace")
      ->check(CLI::IsMember({"normal", "t5", "t10", "laplace"}));
  simulate->add_option("--p", sim.p, "Dimension");
  simulate->add_option("--n", sim.n, "Sample size");
  simulate->add_option("--reps", sim.reps, "Replications");
  simulate->add_option("--seed", sim.seed, "Master seed");
  simulate->add_option("--threads", sim.threads, "Worker threads (overrides SSCOR_THREADS)")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--estimators", sim.estimators, "Comma list of moment,pairwise,multivariate");
  simulate->add_flag("--pretty", sim.pretty, "Print a table instead of CSV");
  simulate->add_option("--output", sim.output, "Output file (default stdout)");

  FigureArgs fig;
  auto* figure = app.add_subcommand("figure", "Eigenvalue scenario data for plotting");
  figure->add_option("--figure", fig.figure, "1: equidistant, 2: one large eigenvalue")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  figure->add_option("--p", fig.p, "Dimension")->required()->check(CLI::Range(2L, 100000L));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (estimate->parsed()) return cmd_estimate(est, out, err);
    if (eigenmap->parsed()) return cmd_eigenmap(em, out, err);
    if (simulate->parsed()) return cmd_simulate(sim, out, err);
    if (figure->parsed()) return cmd_figure(fig, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  err << "error: no subcommand\n";
  return kUsage;
}

}  // namespace spatialsign::cli
