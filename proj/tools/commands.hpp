#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "uscale/scaler.hpp"

namespace uscale::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitStalled = 2;
inline constexpr int kExitMaxIter = 3;
/// decompose reports any non-converged scaling with this code.
inline constexpr int kExitNotConverged = 2;

/// decompose refuses to write factors that reproduce the input less closely.
inline constexpr double kReconstructionTol = 1e-8;
/// Largest relative deviation gradcheck accepts.
inline constexpr double kGradcheckTol = 1e-5;
/// Relative deviations are taken against max(|analytic|, this), which turns
/// the relative bound into an absolute 1e-8 bound near zero.
inline constexpr double kGradcheckScaleFloor = 1e-3;

struct GlobalOptions {
  std::uint64_t seed = 1;
  double tol = 1e-10;
  std::size_t max_iter = 100000;
  bool no_escape = false;
  /// Empty means stdout.
  std::string output;

  ScaleConfig scale_config() const;
};

struct ScaleOptions {
  std::string input;
  /// Trace CSV path; defaults to <output>.trace.csv when --output is given.
  std::string trace;
};

struct DecomposeOptions {
  std::string input;
  std::string form = "zxz";
  std::string branch = "first";
};

struct RandomOptions {
  std::size_t n = 2;
  std::size_t count = 1;
};

struct ExperimentOptions {
  std::string mode = "table1";
  std::size_t n = 3;
  std::size_t samples = 1000;
  std::vector<std::size_t> checkpoints{0, 1, 2, 3, 4, 5, 10, 20, 30, 40, 50, 100};
  bool escape = false;
  std::size_t threads = 0;
};

struct GradcheckOptions {
  std::string input;
  /// Nonzero: check `count` Haar samples of this size instead of a file.
  std::size_t random_n = 0;
  std::size_t count = 100;
  double h = 1e-6;
};

int run_scale(const GlobalOptions& g, const ScaleOptions& o, std::ostream& out, std::ostream& err);
int run_decompose(const GlobalOptions& g, const DecomposeOptions& o, std::ostream& out,
                  std::ostream& err);
int run_random(const GlobalOptions& g, const RandomOptions& o, std::ostream& out, std::ostream& err);
int run_experiment(const GlobalOptions& g, const ExperimentOptions& o, std::ostream& out,
                   std::ostream& err);
int run_gradcheck(const GlobalOptions& g, const GradcheckOptions& o, std::ostream& out,
                  std::ostream& err);

}  // namespace uscale::cli
