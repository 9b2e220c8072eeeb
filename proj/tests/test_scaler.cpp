#include <cmath>
#include <numbers>

#include "doctest.h"
#include "test_support.hpp"
#include "uscale/errors.hpp"
#include "uscale/haar.hpp"
#include "uscale/scaler.hpp"
#include "uscale/zxz.hpp"

using namespace uscale;
using namespace uscale::testing;

namespace {

// numpy oracle (tests/oracles/reference_values.py).
constexpr double kOraclePsi[] = {3.999999999999999,   1.1695616397864397,  0.44189429905624067,
                                 0.1716745756036051,  0.077225418967938,   0.03884778846359005};
constexpr double kPrintedPsi[] = {4.00000, 1.16956, 0.44189, 0.17167, 0.07723, 0.03885};

bool all_zero(const DiagonalPhase& d) {
  for (double a : d.angles())
    if (a != 0.0) return false;
  return true;
}

}  // namespace

TEST_CASE("sinkhorn_step") {
  SUBCASE("worked example, first step") {
    const Matrix a = worked_example();
    const SinkhornStep s = sinkhorn_step(a);
    CHECK(potential(s.next) == doctest::Approx(kOraclePsi[1]).epsilon(1e-12));
    CHECK(std::abs(potential(s.next) - 1.16956) <= 1e-4);
    CHECK(max_abs_difference(apply_diagonals(s.left, a, s.right), s.next) <= 1e-15);
  }
  SUBCASE("identity is a fixed point") {
    const SinkhornStep s = sinkhorn_step(Matrix::identity(3));
    CHECK(all_zero(s.left));
    CHECK(all_zero(s.right));
    CHECK(max_abs_difference(s.next, Matrix::identity(3)) == 0.0);
  }
  SUBCASE("diag(i, 1) is fixed in one step") {
    const SinkhornStep s = sinkhorn_step(diag({I, 1.0}));
    CHECK(line_sum_residual(s.next) <= 1e-15);
  }
  SUBCASE("post-conditions on random inputs") {
    RngStream rng(5);
    for (int t = 0; t < 300; ++t) {
      const std::size_t n = 2 + t % 5;
      const Matrix a = sample_unitary(n, rng);
      const SinkhornStep s = sinkhorn_step(a);
      const LineSums mid = line_sums(apply_diagonals(s.left, a, DiagonalPhase(n)));
      for (const Complex r : mid.rows) {
        CHECK(std::abs(r.imag()) <= 1e-12);
        CHECK(r.real() >= -1e-12);
      }
      const LineSums after = line_sums(s.next);
      for (const Complex c : after.cols) {
        CHECK(std::abs(c.imag()) <= 1e-12);
        CHECK(c.real() >= -1e-12);
      }
      CHECK(std::abs(after.matrix_sum) >= std::abs(line_sums(a).matrix_sum) - 1e-12);
    }
  }
}

TEST_CASE("line_sum_residual") {
  CHECK(line_sum_residual(Matrix::identity(4)) == 0.0);
  CHECK(line_sum_residual(negator(0.3)) <= 1e-12);
  // Largest deviation of the printed A_5 is its second column sum, 1.0904.
  CHECK(line_sum_residual(printed_a5()) == doctest::Approx(0.0903).epsilon(2e-3));
}

TEST_CASE("scale reproduces the worked example") {
  ScaleConfig cfg;
  cfg.max_iter = 5;
  const ScaleResult r = scale(worked_example(), cfg);
  CHECK(r.status == ScaleStatus::MaxIterReached);
  REQUIRE(r.trace.records.size() == 6);
  CHECK(r.trace.events.empty());
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(r.trace.records[k].k == k);
    CHECK(r.trace.records[k].psi == doctest::Approx(kOraclePsi[k]).epsilon(1e-12));
    CHECK(std::abs(r.trace.records[k].psi - kPrintedPsi[k]) <= 1e-4);
  }
  const Matrix printed = printed_a5();
  CHECK(max_abs_difference(r.scaled, printed) <= 2e-3);
  CHECK(line_sum_residual(r.scaled) == doctest::Approx(0.0904).epsilon(1e-3));
  CHECK(max_abs_difference(apply_diagonals(r.left, worked_example(), r.right), r.scaled) <= 1e-10);
}

TEST_CASE("scale on an already scaled matrix stops at k = 0") {
  const ScaleResult r = scale(negator(0.7));
  CHECK(r.status == ScaleStatus::Converged);
  CHECK(r.trace.records.size() == 1);
  CHECK(r.trace.events.empty());
  CHECK(all_zero(r.left));
  CHECK(all_zero(r.right));
}

TEST_CASE("scale on the rotation matrix") {
  const double p = std::numbers::pi / 6;
  const Matrix a = rotation(p);
  const ScaleResult r = scale(a);
  CHECK(r.status == ScaleStatus::Converged);
  REQUIRE_FALSE(r.trace.events.empty());
  CHECK(r.trace.events.front().iteration == 0);
  CHECK(r.trace.events.front().kind == EventKind::PrestartPerturbation);
  CHECK(line_sum_residual(r.scaled) <= 1e-10);
  // One of the two attractors; the second is diag(e^{ip}, i e^{ip}) A diag(1, -i).
  const double to_b = max_abs_difference(r.scaled, negator(p));
  const double to_bprime = max_abs_difference(r.scaled, negator(-p));
  CHECK(std::min(to_b, to_bprime) <= 1e-8);
  CHECK(max_abs_difference(apply_diagonals(r.left, a, r.right), r.scaled) <= 1e-10);
}

TEST_CASE("scale rejects non-unitary input and bad configs") {
  CHECK_THROWS_AS(scale(diag({1.0, 2.0})), NonUnitaryInput);
  ScaleConfig bad;
  bad.tol_residual = 0.0;
  CHECK_THROWS_AS(scale(Matrix::identity(2), bad), std::invalid_argument);
  bad = {};
  bad.stall_epsilon = 1e-9;
  CHECK_THROWS_AS(scale(Matrix::identity(2), bad), std::invalid_argument);
}

TEST_CASE("detect_constant_argument_start") {
  for (double p : {0.1, 0.5, 0.7}) CHECK(detect_constant_argument_start(rotation(p), 1e-12));
  CHECK_FALSE(detect_constant_argument_start(worked_example(), 1e-12));
  CHECK(detect_constant_argument_start(diag({1.0, -1.0}), 1e-12));
  CHECK(detect_constant_argument_start(hadamard(), 1e-12));
  CHECK(detect_constant_argument_start(Matrix::identity(3).scaled(std::polar(1.0, 2.0)), 1e-12));
}

TEST_CASE("prestart_perturbation") {
  RngStream rng(0);
  SUBCASE("rotation matrix gets L0 = diag(i, 1)") {
    const Matrix a = rotation(0.4);
    const PhasePair p = prestart_perturbation(a, rng);
    CHECK(p.left.angle(0) == doctest::Approx(std::numbers::pi / 2));
    CHECK(p.left.angle(1) == 0.0);
    CHECK(all_zero(p.right));
    const LineSums s = line_sums(apply_diagonals(p.left, a, p.right));
    CHECK(std::arg(s.rows[0]) == doctest::Approx(std::numbers::pi / 2));
    CHECK(std::arg(s.rows[1]) == doctest::Approx(0.0));
  }
  SUBCASE("generalized Hadamard input") {
    const Matrix a = hadamard();
    const PhasePair p = prestart_perturbation(a, rng);
    CHECK(all_zero(p.right));
    CHECK(p.left.angle(0) != 0.0);
    CHECK(p.left.angle(1) == 0.0);
    CHECK_FALSE(detect_constant_argument_start(apply_diagonals(p.left, a, p.right), 1e-12));
  }
  SUBCASE("diag(1, 1, -1)") {
    const Matrix a = diag({1.0, 1.0, -1.0});
    const PhasePair p = prestart_perturbation(a, rng);
    CHECK(p.left.angle(0) == doctest::Approx(std::numbers::pi / 2));
    CHECK(p.left.angle(1) == 0.0);
    CHECK(p.left.angle(2) == 0.0);
    CHECK(all_zero(p.right));
    CHECK_FALSE(detect_constant_argument_start(apply_diagonals(p.left, a, p.right), 1e-12));
  }
}

TEST_CASE("escape_saddle") {
  const ScaleConfig cfg;
  RngStream rng(3);
  SUBCASE("orthogonal saddle") {
    const Matrix s = rotation(std::numbers::pi / 6);
    CHECK(potential(s) == doctest::Approx(1.0));
    const PhasePair p = escape_saddle(s, cfg, rng);
    CHECK(potential(apply_diagonals(p.left, s, p.right)) < 1.0);
  }
  SUBCASE("global minimum") {
    const PhasePair p = escape_saddle(negator(0.2), cfg, rng);
    CHECK(p.left.is_identity());
    CHECK(p.right.is_identity());
  }
  SUBCASE("global maximum") {
    const Matrix m = diag({1.0, -1.0});
    const PhasePair p = escape_saddle(m, cfg, rng);
    CHECK(potential(apply_diagonals(p.left, m, p.right)) < 4.0);
  }
  SUBCASE("trial directions are orthogonal to the global phases") {
    RngStream r2(9);
    const Matrix u = sample_unitary(4, r2);
    const PhasePair p = escape_saddle(u, cfg, rng);
    double sl = 0.0, sr = 0.0;
    for (double a : p.left.angles()) sl += a;
    for (double a : p.right.angles()) sr += a;
    CHECK(std::abs(sl) <= 1e-15);
    CHECK(std::abs(sr) <= 1e-15);
  }
}

TEST_CASE("scale invariants on Haar samples") {
  RngStream rng(2718);
  for (std::size_t n = 2; n <= 5; ++n) {
    for (int t = 0; t < 60; ++t) {
      const Matrix a = sample_unitary(n, rng);
      ScaleConfig cfg;
      cfg.rng_seed = rng.next_u64();
      const ScaleResult r = scale(a, cfg);
      CHECK(r.status == ScaleStatus::Converged);
      CHECK(line_sum_residual(r.scaled) < cfg.tol_residual);
      CHECK(max_abs_difference(apply_diagonals(r.left, a, r.right), r.scaled) <= 1e-10);
      const auto& rec = r.trace.records;
      CHECK(unitarity_residual(r.scaled) <=
            unitarity_residual(a) + static_cast<double>(rec.size()) * 1e-13);
      for (std::size_t k = 0; k < rec.size(); ++k) CHECK(rec[k].k == k);
      for (std::size_t k = 1; k < rec.size(); ++k) {
        bool escaped = false;
        for (const auto& e : r.trace.events) escaped |= e.iteration == k - 1;
        if (!escaped) CHECK(rec[k].psi <= rec[k - 1].psi + 1e-12);
      }
    }
  }
}

TEST_CASE("all Haar U(3) samples converge with the default config") {
  RngStream rng(1);
  int converged = 0;
  for (int t = 0; t < 1000; ++t)
    converged += scale(sample_unitary(3, rng)).status == ScaleStatus::Converged;
  CHECK(converged == 1000);
}

TEST_CASE("escape disabled reports the stall") {
  ScaleConfig cfg;
  cfg.escape_enabled = false;
  const ScaleResult r = scale(rotation(0.3), cfg);
  CHECK(r.status == ScaleStatus::StalledAtSaddle);
}

TEST_CASE("scale is deterministic") {
  RngStream rng(4);
  const Matrix a = sample_unitary(4, rng);
  const ScaleResult x = scale(a), y = scale(a);
  CHECK(x.trace.records.size() == y.trace.records.size());
  for (std::size_t k = 0; k < 16; ++k) CHECK(x.scaled.entries()[k] == y.scaled.entries()[k]);
}

TEST_CASE("stationary points with psi > 0 that no small perturbation can leave") {
  // Some Haar U(3) inputs descend to points whose line sums are all real and
  // positive but not 1. Small trial phases only raise psi there.
  RngStream rng(1);
  ScaleConfig bare;
  bare.max_restarts = 0;
  int found = 0;
  for (int t = 0; t < 200 && found < 3; ++t) {
    const Matrix a = sample_unitary(3, rng);
    const ScaleResult r = scale(a, bare);
    if (r.status == ScaleStatus::Converged) continue;
    ++found;
    CHECK(r.status == ScaleStatus::StalledAtSaddle);
    const Matrix& m = r.scaled;
    CHECK(potential(m) > 1e-4);
    for (const Complex s : line_sums(m).rows) {
      CHECK(std::abs(s.imag()) <= 1e-6);
      CHECK(s.real() > 0.0);
    }
    RngStream probe(0);
    for (double delta : {1e-3, 1e-2}) {
      ScaleConfig c;
      c.escape_delta = delta;
      const PhasePair p = escape_saddle(m, c, probe);
      CHECK(p.left.is_identity());
      CHECK(p.right.is_identity());
    }
    const ScaleResult fixed = scale(a);
    CHECK(fixed.status == ScaleStatus::Converged);
    bool restarted = false;
    for (const auto& e : fixed.trace.events) restarted |= e.kind == EventKind::Restart;
    CHECK(restarted);
  }
  CHECK(found == 3);
}

TEST_CASE("every event is followed by fresh records only") {
  RngStream rng(31);
  for (int t = 0; t < 100; ++t) {
    const ScaleResult r = scale(sample_unitary(4, rng));
    std::size_t last = 0;
    for (const auto& e : r.trace.events) {
      CHECK(e.iteration >= last);
      CHECK(e.iteration < r.trace.records.size());
      last = e.iteration;
    }
    CHECK(to_string(EventKind::Restart) == "restart");
  }
}
