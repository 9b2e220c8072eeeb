#include "commands.hpp"

#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

#include "uscale/errors.hpp"
#include "uscale/experiment.hpp"
#include "uscale/haar.hpp"
#include "uscale/io.hpp"
#include "uscale/landscape.hpp"
#include "uscale/zxz.hpp"

namespace uscale::cli {

namespace {

void emit(const GlobalOptions& g, const std::string& content, std::ostream& out) {
  if (g.output.empty())
    out << content;
  else
    write_file_atomic(g.output, content);
}

// Loads the input and checks unitarity; prints a diagnostic and returns
// nullopt on failure.
std::optional<Matrix> load_unitary(const std::string& path, std::ostream& err) {
  std::optional<Matrix> m;
  try {
    m.emplace(read_matrix_file(path));
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return std::nullopt;
  }
  const std::size_t n = m->size();
  double worst = 0.0;
  std::size_t wi = 0, wj = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex dot = 0.0;
      for (std::size_t k = 0; k < n; ++k) dot += std::conj((*m)(k, i)) * (*m)(k, j);
      if (i == j) dot -= 1.0;
      if (std::abs(dot) > worst) {
        worst = std::abs(dot);
        wi = i;
        wj = j;
      }
    }
  if (worst > kScaleUnitarityTol) {
    err << "error: " << path << ": matrix is not unitary: unitarity residual "
        << format_double(worst) << " exceeds " << kScaleUnitarityTol << " (worst entry (" << wi
        << "," << wj << ") of M^H M - I)\n";
    return std::nullopt;
  }
  return m;
}

}  // namespace

ScaleConfig GlobalOptions::scale_config() const {
  ScaleConfig cfg;
  cfg.tol_residual = tol;
  cfg.max_iter = max_iter;
  cfg.escape_enabled = !no_escape;
  cfg.rng_seed = seed;
  return cfg;
}

int run_scale(const GlobalOptions& g, const ScaleOptions& o, std::ostream& out, std::ostream& err) {
  const auto a = load_unitary(o.input, err);
  if (!a) return kExitInvalid;
  std::optional<ScaleResult> result;
  try {
    result.emplace(scale(*a, g.scale_config()));
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  const ScaleResult& r = *result;

  std::string trace_path = o.trace;
  if (trace_path.empty() && !g.output.empty()) trace_path = g.output + ".trace.csv";
  if (!trace_path.empty()) {
    std::ostringstream csv;
    write_trace_csv(csv, r.trace);
    if (trace_path == "-")
      out << csv.str();
    else
      write_file_atomic(trace_path, csv.str());
  }
  emit(g, scale_result_to_json(r).dump(2) + "\n", out);

  switch (r.status) {
    case ScaleStatus::Converged: return kExitOk;
    case ScaleStatus::StalledAtSaddle:
      err << "scale: stalled at a stationary point\n";
      return kExitStalled;
    case ScaleStatus::MaxIterReached:
      err << "scale: iteration budget exhausted\n";
      return kExitMaxIter;
  }
  return kExitOk;
}

int run_decompose(const GlobalOptions& g, const DecomposeOptions& o, std::ostream& out,
                  std::ostream& err) {
  if (o.form != "zxz" && o.form != "xzxzxz") {
    err << "error: --form must be zxz or xzxzxz\n";
    return kExitInvalid;
  }
  if (o.branch != "first" && o.branch != "second") {
    err << "error: --branch must be first or second\n";
    return kExitInvalid;
  }
  const auto u = load_unitary(o.input, err);
  if (!u) return kExitInvalid;
  const U2Branch branch = o.branch == "first" ? U2Branch::First : U2Branch::Second;

  try {
    nlohmann::json j;
    double residual = 0.0;
    if (o.form == "zxz") {
      const auto d = zxz_decompose(*u, g.scale_config(), branch);
      residual = max_abs_difference(d.reconstruct(), *u);
      j = decomposition_to_json(d);
    } else {
      const auto d = xzxzxz_decompose(*u, g.scale_config(), branch);
      residual = max_abs_difference(d.reconstruct(), *u);
      j = decomposition_to_json(d);
    }
    if (!(residual <= kReconstructionTol)) {
      err << "error: reconstruction residual " << format_double(residual) << " exceeds "
          << kReconstructionTol << '\n';
      return kExitNotConverged;
    }
    j["form"] = o.form;
    j["residual"] = residual;
    emit(g, j.dump(2) + "\n", out);
  } catch (const OddDimension& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ScalingDidNotConverge& e) {
    err << "error: " << e.what() << '\n';
    return kExitNotConverged;
  }
  return kExitOk;
}

int run_random(const GlobalOptions& g, const RandomOptions& o, std::ostream& out,
               std::ostream& err) {
  if (o.n == 0 || o.count == 0) {
    err << "error: n and count must be at least 1\n";
    return kExitInvalid;
  }
  std::ostringstream lines;
  for (std::size_t i = 0; i < o.count; ++i) {
    RngStream rng = RngStream::split(g.seed, i);
    lines << matrix_to_json(sample_unitary(o.n, rng)).dump() << '\n';
  }
  emit(g, lines.str(), out);
  return kExitOk;
}

int run_experiment(const GlobalOptions& g, const ExperimentOptions& o, std::ostream& out,
                   std::ostream& err) {
  ExperimentConfig cfg;
  cfg.n = o.n;
  cfg.samples = o.samples;
  cfg.checkpoints = o.checkpoints;
  cfg.seed = g.seed;
  cfg.escape_enabled = o.escape && !g.no_escape;
  cfg.threads = o.threads;
  if (o.mode == "corr") cfg.checkpoints = {0, 1, 2, 3};
  else if (o.mode != "table1" && o.mode != "hist") {
    err << "error: --mode must be table1, hist or corr\n";
    return kExitInvalid;
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  const PotentialSamples samples = run_campaign(cfg);
  std::ostringstream csv;
  if (o.mode == "table1")
    write_table_csv(csv, table_stats(samples));
  else if (o.mode == "hist")
    write_hist_csv(csv, samples);
  else
    write_corr_csv(csv, samples);
  emit(g, csv.str(), out);
  return kExitOk;
}

int run_gradcheck(const GlobalOptions& g, const GradcheckOptions& o, std::ostream& out,
                  std::ostream& err) {
  std::vector<Matrix> inputs;
  if (o.random_n > 0) {
    for (std::size_t i = 0; i < o.count; ++i) {
      RngStream rng = RngStream::split(g.seed, i);
      inputs.push_back(sample_unitary(o.random_n, rng));
    }
  } else {
    const auto m = load_unitary(o.input, err);
    if (!m) return kExitInvalid;
    inputs.push_back(*m);
  }

  double worst = 0.0;
  double max_analytic = 0.0;
  double max_numeric = 0.0;
  std::string worst_where = "none";
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto analytic = gradient(inputs[i]);
    const auto numeric = finite_difference_gradient(inputs[i], o.h);
    max_analytic = std::max(max_analytic, analytic.max_abs());
    max_numeric = std::max(max_numeric, numeric.max_abs());
    const std::size_t n = inputs[i].size();
    for (std::size_t axis = 0; axis < 2 * n; ++axis) {
      const bool is_lambda = axis < n;
      const std::size_t j = is_lambda ? axis : axis - n;
      const double a = is_lambda ? analytic.dlambda[j] : analytic.drho[j];
      const double f = is_lambda ? numeric.dlambda[j] : numeric.drho[j];
      const double dev = std::abs(a - f) / std::max(std::abs(a), kGradcheckScaleFloor);
      if (dev > worst) {
        worst = dev;
        std::ostringstream where;
        where << "matrix " << i << ", d" << (is_lambda ? "lambda" : "rho") << "[" << j
              << "]: analytic " << format_double(a) << ", finite difference "
              << format_double(f);
        worst_where = where.str();
      }
    }
  }

  std::ostringstream report;
  report << "matrices: " << inputs.size() << '\n'
         << "max relative deviation: " << format_double(worst) << '\n'
         << "max |analytic|: " << format_double(max_analytic) << '\n'
         << "max |finite difference|: " << format_double(max_numeric) << '\n'
         << "worst component: " << worst_where << '\n';
  emit(g, report.str(), out);
  if (worst < kGradcheckTol) return kExitOk;
  err << "gradcheck failed: " << worst_where << '\n';
  return kExitInvalid;
}

}  // namespace uscale::cli
