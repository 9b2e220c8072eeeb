#include "uscale/scaler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "uscale/errors.hpp"

namespace uscale {

namespace {

constexpr int kPrestartRetries = 16;

// Angle of 1/phi(y).
double inverse_phase_angle(Complex y) {
  if (std::abs(y) == 0.0) return 0.0;
  return -std::arg(y);
}

std::vector<std::size_t> nonzero_indices(const std::vector<Complex>& sums) {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < sums.size(); ++j)
    if (std::abs(sums[j]) > kStationaryStartTol) idx.push_back(j);
  return idx;
}

DiagonalPhase single_phase(std::size_t n, std::size_t at, double angle) {
  std::vector<double> a(n, 0.0);
  a[at] = angle;
  return DiagonalPhase(std::move(a));
}

// Orthonormal basis of the zero-sum subspace of R^n (Helmert contrasts).
std::vector<std::vector<double>> helmert_basis(std::size_t n) {
  std::vector<std::vector<double>> basis;
  for (std::size_t j = 1; j < n; ++j) {
    std::vector<double> h(n, 0.0);
    const double norm = std::sqrt(static_cast<double>(j * (j + 1)));
    for (std::size_t k = 0; k < j; ++k) h[k] = 1.0 / norm;
    h[j] = -static_cast<double>(j) / norm;
    basis.push_back(std::move(h));
  }
  return basis;
}

// Limit estimate above this fraction of the current potential counts as a stall.
constexpr double kStallLimitFraction = 0.75;
// Windows since the last perturbation before the extrapolation test applies;
// earlier on, transients make it unreliable.
constexpr std::size_t kStallLimitWindows = 20;

// Plain test: psi fell by less than stall_epsilon over one window. Extra test for
// slow approach to a point with psi > 0: Aitken's extrapolation over two windows
// (exactly zero for geometric decay to zero) still leaves most of psi in place.
bool stalled(const std::vector<TraceRecord>& records, std::size_t k, std::size_t usable,
             const ScaleConfig& cfg) {
  const std::size_t w = cfg.stall_window;
  const double psi_now = records[k].psi;
  if (psi_now <= cfg.tol_residual) return false;
  const double d2 = records[k - w].psi - psi_now;
  if (d2 < cfg.stall_epsilon) return true;
  if (usable < kStallLimitWindows * w) return false;
  const double d1 = records[k - 2 * w].psi - records[k - w].psi;
  if (!(d1 > d2)) return false;
  const double ratio = d2 / d1;
  const double limit = psi_now - d2 * ratio / (1.0 - ratio);
  return limit > kStallLimitFraction * psi_now;
}

}  // namespace

void ScaleConfig::validate() const {
  if (!(tol_residual > 0.0)) throw std::invalid_argument("tol_residual must be positive");
  if (!(stall_epsilon < tol_residual))
    throw std::invalid_argument("stall_epsilon must be smaller than tol_residual");
  if (max_iter == 0) throw std::invalid_argument("max_iter must be positive");
  if (stall_window == 0) throw std::invalid_argument("stall_window must be positive");
  if (!(escape_delta > 0.0)) throw std::invalid_argument("escape_delta must be positive");
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::PrestartPerturbation: return "prestart_perturbation";
    case EventKind::SaddleEscape: return "saddle_escape";
    case EventKind::Restart: return "restart";
  }
  return "unknown";
}

std::string_view to_string(ScaleStatus status) {
  switch (status) {
    case ScaleStatus::Converged: return "Converged";
    case ScaleStatus::MaxIterReached: return "MaxIterReached";
    case ScaleStatus::StalledAtSaddle: return "StalledAtSaddle";
  }
  return "unknown";
}

SinkhornStep sinkhorn_step(const Matrix& prev) {
  const std::size_t n = prev.size();
  const DiagonalPhase identity(n);

  const LineSums before = line_sums(prev);
  std::vector<double> left(n);
  for (std::size_t a = 0; a < n; ++a) left[a] = inverse_phase_angle(before.rows[a]);
  DiagonalPhase left_phase(std::move(left));
  const Matrix row_aligned = apply_diagonals(left_phase, prev, identity);

  const LineSums mid = line_sums(row_aligned);
  std::vector<double> right(n);
  for (std::size_t b = 0; b < n; ++b) right[b] = inverse_phase_angle(mid.cols[b]);
  DiagonalPhase right_phase(std::move(right));
  Matrix next = apply_diagonals(identity, row_aligned, right_phase);

  return {std::move(left_phase), std::move(right_phase), std::move(next)};
}

double line_sum_residual(const Matrix& a) {
  const LineSums s = line_sums(a);
  double worst = 0.0;
  for (const auto& r : s.rows) worst = std::max(worst, std::abs(r - 1.0));
  for (const auto& c : s.cols) worst = std::max(worst, std::abs(c - 1.0));
  return worst;
}

bool detect_constant_argument_start(const Matrix& a, double tol_arg) {
  const LineSums s = line_sums(a);
  if (std::abs(s.matrix_sum) <= tol_arg) return true;

  bool have_reference = false;
  double reference = 0.0;
  auto agrees = [&](Complex sum) {
    if (std::abs(sum) <= tol_arg) return true;
    const double arg = std::arg(sum);
    if (!have_reference) {
      have_reference = true;
      reference = arg;
      return true;
    }
    return std::abs(wrap_angle(arg - reference)) <= tol_arg;
  };
  return std::all_of(s.rows.begin(), s.rows.end(), agrees) &&
         std::all_of(s.cols.begin(), s.cols.end(), agrees);
}

PhasePair prestart_perturbation(const Matrix& a, RngStream& rng) {
  const std::size_t n = a.size();
  const LineSums s = line_sums(a);
  const auto rows = nonzero_indices(s.rows);
  const auto cols = nonzero_indices(s.cols);

  // A unitary matrix has sum_a |r_a|^2 = n, so `rows` is never empty for valid input.
  const bool use_column = rows.size() < 2 && cols.size() >= 2;
  const std::size_t at = use_column ? cols.front() : (rows.empty() ? 0 : rows.front());

  auto build = [&](double angle) {
    if (use_column) return PhasePair{DiagonalPhase(n), single_phase(n, at, angle)};
    return PhasePair{single_phase(n, at, angle), DiagonalPhase(n)};
  };

  PhasePair pair = build(std::numbers::pi / 2);
  for (int attempt = 0; attempt < kPrestartRetries; ++attempt) {
    if (!detect_constant_argument_start(apply_diagonals(pair.left, a, pair.right),
                                        kStationaryStartTol))
      break;
    pair = build(std::numbers::pi * (2.0 * rng.uniform() - 1.0));
  }
  return pair;
}

PhasePair escape_saddle(const Matrix& stalled, const ScaleConfig& cfg, RngStream& rng) {
  const std::size_t n = stalled.size();
  PhasePair best{DiagonalPhase(n), DiagonalPhase(n)};
  if (n < 2) return best;

  // Trial directions in (lambda, rho) space, all orthogonal to the two
  // global-phase directions (1..1, 0..0) and (0..0, 1..1):
  //   (h_j, -h_j) / sqrt2 for each Helmert vector h_j, plus (h_1, h_1) / sqrt2.
  const auto basis = helmert_basis(n);
  std::vector<std::pair<const std::vector<double>*, double>> directions;
  for (const auto& h : basis) directions.emplace_back(&h, -1.0);
  directions.emplace_back(&basis.front(), 1.0);

  double best_psi = potential(stalled);
  const double step = cfg.escape_delta / std::numbers::sqrt2;
  for (const auto& [h, rho_sign] : directions) {
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    std::vector<double> lambda(n), rho(n);
    for (std::size_t j = 0; j < n; ++j) {
      lambda[j] = sign * step * (*h)[j];
      rho[j] = rho_sign * lambda[j];
    }
    PhasePair trial{DiagonalPhase(std::move(lambda)), DiagonalPhase(std::move(rho))};
    const double psi = potential(apply_diagonals(trial.left, stalled, trial.right));
    if (psi < best_psi) {
      best_psi = psi;
      best = std::move(trial);
    }
  }
  return best;
}

PhasePair random_restart(std::size_t n, RngStream& rng) {
  std::vector<double> left(n), right(n);
  for (auto& x : left) x = std::numbers::pi * (2.0 * rng.uniform() - 1.0);
  for (auto& x : right) x = std::numbers::pi * (2.0 * rng.uniform() - 1.0);
  return {DiagonalPhase(std::move(left)), DiagonalPhase(std::move(right))};
}

ScaleResult scale(const Matrix& a, const ScaleConfig& cfg) {
  cfg.validate();
  const double input_residual = unitarity_residual(a);
  if (input_residual > kScaleUnitarityTol) {
    std::ostringstream msg;
    msg << "scale: input unitarity residual " << input_residual << " exceeds "
        << kScaleUnitarityTol;
    throw NonUnitaryInput(msg.str(), input_residual);
  }

  const std::size_t n = a.size();
  RngStream rng(cfg.rng_seed);
  ScaleResult result{a, DiagonalPhase(n), DiagonalPhase(n), {}, ScaleStatus::MaxIterReached};
  auto& trace = result.trace;
  Matrix& current = result.scaled;

  auto perturb = [&](const PhasePair& p) {
    current = apply_diagonals(p.left, current, p.right);
    result.left = p.left * result.left;
    result.right = result.right * p.right;
  };
  auto record = [&](std::size_t k) {
    const double residual = line_sum_residual(current);
    trace.records.push_back({k, potential(current), residual});
    return residual < cfg.tol_residual;
  };

  if (line_sum_residual(current) >= cfg.tol_residual &&
      detect_constant_argument_start(current, kStationaryStartTol)) {
    perturb(prestart_perturbation(current, rng));
    trace.events.push_back({0, EventKind::PrestartPerturbation});
  }
  if (record(0)) {
    result.status = ScaleStatus::Converged;
    return result;
  }

  std::size_t window_start = 0;
  std::size_t restarts = 0;
  for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
    SinkhornStep s = sinkhorn_step(current);
    current = std::move(s.next);
    result.left = s.left * result.left;
    result.right = result.right * s.right;
    if (record(k)) {
      result.status = ScaleStatus::Converged;
      return result;
    }

    // records[window_start] predates the last perturbation, so only later ones count.
    if (k - window_start <= cfg.stall_window) continue;
    if (!stalled(trace.records, k, k - window_start - 1, cfg)) continue;

    if (!cfg.escape_enabled) {
      result.status = ScaleStatus::StalledAtSaddle;
      return result;
    }
    const PhasePair escape = escape_saddle(current, cfg, rng);
    if (!escape.left.is_identity() || !escape.right.is_identity()) {
      perturb(escape);
      trace.events.push_back({k, EventKind::SaddleEscape});
    } else if (restarts < cfg.max_restarts) {
      // No nearby descent: a local minimum, not a saddle.
      ++restarts;
      perturb(random_restart(n, rng));
      trace.events.push_back({k, EventKind::Restart});
    } else {
      result.status = ScaleStatus::StalledAtSaddle;
      return result;
    }
    window_start = k;
  }
  return result;
}

}  // namespace uscale
