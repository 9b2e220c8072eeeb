#include "uscale/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>
#include <thread>

#include "uscale/haar.hpp"

namespace uscale {

void ExperimentConfig::validate() const {
  if (n == 0) throw std::invalid_argument("experiment: n must be at least 1");
  if (samples == 0) throw std::invalid_argument("experiment: samples must be at least 1");
  if (checkpoints.empty()) throw std::invalid_argument("experiment: no checkpoints");
  for (std::size_t i = 1; i < checkpoints.size(); ++i)
    if (checkpoints[i] <= checkpoints[i - 1])
      throw std::invalid_argument("experiment: checkpoints must be strictly increasing");
}

std::vector<double> potential_trajectory(const Matrix& a, std::size_t steps,
                                         const ScaleConfig& cfg) {
  std::vector<double> psi;
  psi.reserve(steps + 1);
  if (!cfg.escape_enabled) {
    Matrix current = a;
    psi.push_back(potential(current));
    for (std::size_t k = 1; k <= steps; ++k) {
      current = sinkhorn_step(current).next;
      psi.push_back(potential(current));
    }
    return psi;
  }

  ScaleConfig run = cfg;
  run.max_iter = std::max<std::size_t>(steps, 1);
  const ScaleResult r = scale(a, run);
  for (const auto& rec : r.trace.records) {
    if (rec.k > steps) break;
    psi.push_back(rec.psi);
  }
  while (psi.size() < steps + 1) psi.push_back(psi.back());
  return psi;
}

PotentialSamples run_campaign(const ExperimentConfig& cfg) {
  cfg.validate();
  PotentialSamples out{cfg.checkpoints, std::vector<std::vector<double>>(cfg.samples)};
  const std::size_t steps = cfg.checkpoints.back();

  ScaleConfig scale_cfg;
  scale_cfg.escape_enabled = cfg.escape_enabled;

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cfg.samples; i = next++) {
      RngStream rng = RngStream::split(cfg.seed, i);
      const Matrix a = sample_unitary(cfg.n, rng);
      ScaleConfig sample_cfg = scale_cfg;
      sample_cfg.rng_seed = rng.next_u64();
      const auto traj = potential_trajectory(a, steps, sample_cfg);
      auto& row = out.psi[i];
      row.reserve(cfg.checkpoints.size());
      for (std::size_t k : cfg.checkpoints) row.push_back(traj[k]);
    }
  };

  std::size_t threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, cfg.samples);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

std::vector<CheckpointStats> table_stats(const PotentialSamples& samples) {
  std::vector<CheckpointStats> stats;
  for (std::size_t c = 0; c < samples.checkpoints.size(); ++c) {
    CheckpointStats s{samples.checkpoints[c], std::numeric_limits<double>::infinity(), 0.0,
                      -std::numeric_limits<double>::infinity()};
    for (const auto& row : samples.psi) {
      s.min_psi = std::min(s.min_psi, row[c]);
      s.max_psi = std::max(s.max_psi, row[c]);
      s.ave_psi += row[c];
    }
    s.ave_psi /= static_cast<double>(samples.psi.size());
    stats.push_back(s);
  }
  return stats;
}

}  // namespace uscale
