#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "uscale/matcore.hpp"
#include "uscale/scaler.hpp"

namespace uscale {

/// Monte Carlo campaign over Haar-random n x n unitaries.
struct ExperimentConfig {
  std::size_t n = 3;
  std::size_t samples = 1000;
  /// Strictly increasing iteration indices at which the potential is recorded.
  std::vector<std::size_t> checkpoints{0, 1, 2, 3, 4, 5, 10, 20, 30, 40, 50, 100};
  std::uint64_t seed = 1;
  /// false runs the bare iteration, which is what the potential tables show.
  bool escape_enabled = false;
  /// 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;

  void validate() const;
};

/// psi[i][c] is the potential of sample i after checkpoints[c] steps.
struct PotentialSamples {
  std::vector<std::size_t> checkpoints;
  std::vector<std::vector<double>> psi;
};

struct CheckpointStats {
  std::size_t k;
  double min_psi;
  double ave_psi;
  double max_psi;
};

/// Potentials of A_0 .. A_steps.
///
/// With cfg.escape_enabled false this is the bare iteration (no stationary
/// start handling, no escapes, no early stop). Otherwise scale() runs with
/// max_iter = steps and the last recorded potential is carried forward once
/// it stops.
std::vector<double> potential_trajectory(const Matrix& a, std::size_t steps,
                                         const ScaleConfig& cfg);

/// Sample i is drawn from RngStream::split(cfg.seed, i); results are stored by
/// sample index, so the output does not depend on the thread count.
PotentialSamples run_campaign(const ExperimentConfig& cfg);

std::vector<CheckpointStats> table_stats(const PotentialSamples& samples);

}  // namespace uscale
