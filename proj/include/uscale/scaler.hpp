#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "uscale/matcore.hpp"
#include "uscale/rng.hpp"

namespace uscale {

/// scale() rejects inputs whose unitarity residual exceeds this.
inline constexpr double kScaleUnitarityTol = 1e-8;

/// Line-sum argument tolerance scale() uses to decide that the start matrix is
/// stationary.
inline constexpr double kStationaryStartTol = 1e-12;

struct ScaleConfig {
  double tol_residual = 1e-10;
  std::size_t max_iter = 100000;
  /// A stall is a potential decrease below stall_epsilon over this many steps.
  std::size_t stall_window = 50;
  double stall_epsilon = 1e-14;
  bool escape_enabled = true;
  /// Size (radians) of each trial phase perturbation in escape_saddle.
  double escape_delta = 1e-3;
  /// Random-phase restarts allowed when escape_saddle finds no descent
  /// direction (a local minimum with psi > 0). 0 reports StalledAtSaddle there.
  std::size_t max_restarts = 32;
  std::uint64_t rng_seed = 0;

  /// Throws std::invalid_argument when the fields are inconsistent.
  void validate() const;
};

enum class EventKind { PrestartPerturbation, SaddleEscape, Restart };
enum class ScaleStatus { Converged, MaxIterReached, StalledAtSaddle };

std::string_view to_string(EventKind kind);
std::string_view to_string(ScaleStatus status);

struct TraceRecord {
  std::size_t k;
  double psi;
  double residual;
};

struct TraceEvent {
  std::size_t iteration;
  EventKind kind;
};

/// Per-iteration history. records[k] describes A_k; events are perturbations
/// applied after the record with the same iteration index.
struct ScaleTrace {
  std::vector<TraceRecord> records;
  std::vector<TraceEvent> events;
};

/// B = diag(left) * A * diag(right).
struct ScaleResult {
  Matrix scaled;
  DiagonalPhase left;
  DiagonalPhase right;
  ScaleTrace trace;
  ScaleStatus status;
};

struct SinkhornStep {
  DiagonalPhase left;
  DiagonalPhase right;
  Matrix next;
};

struct PhasePair {
  DiagonalPhase left;
  DiagonalPhase right;
};

/// One row-phase then column-phase normalization: left_aa = 1/phi(row sum a)
/// of `prev`, right_bb = 1/phi(column sum b) of diag(left)*prev.
SinkhornStep sinkhorn_step(const Matrix& prev);

/// Max over all 2n line sums of |sum - 1|.
double line_sum_residual(const Matrix& a);

/// True when the matrix sum is zero, or when every line sum with modulus above
/// tol_arg has the same argument (mod 2 pi, within tol_arg). Either way the
/// plain iteration cannot leave `a`.
bool detect_constant_argument_start(const Matrix& a, double tol_arg);

/// Phases that move a stationary start off its stationary point.
///
/// Two or more nonzero row sums: one left phase at the first such row. Else two
/// or more nonzero column sums: one right phase at the first such column.
/// Otherwise (generalized Hadamard) one left phase at the nonzero row. The
/// phase is pi/2; if that leaves the line-sum arguments equal, phases drawn
/// from `rng` are tried instead.
PhasePair prestart_perturbation(const Matrix& a, RngStream& rng);

/// Best of n trial perturbations of size cfg.escape_delta along mutually
/// orthogonal phase directions, or the identity pair when none lowers the
/// potential.
PhasePair escape_saddle(const Matrix& stalled, const ScaleConfig& cfg, RngStream& rng);

/// Uniformly random phases for every row and column, drawn from `rng`.
PhasePair random_restart(std::size_t n, RngStream& rng);

/// Runs the iteration to unit line sums. Throws NonUnitaryInput when the
/// unitarity residual of `a` exceeds kScaleUnitarityTol.
ScaleResult scale(const Matrix& a, const ScaleConfig& cfg = {});

}  // namespace uscale
