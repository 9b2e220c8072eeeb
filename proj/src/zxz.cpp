#include "uscale/zxz.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "uscale/errors.hpp"
#include "uscale/u2.hpp"

namespace uscale {

namespace {

std::string describe_failure(const ScaleResult& r) {
  std::ostringstream msg;
  msg << "scaling did not converge: status " << to_string(r.status) << " after "
      << (r.trace.records.empty() ? 0 : r.trace.records.back().k) << " iterations, residual "
      << (r.trace.records.empty() ? 0.0 : r.trace.records.back().residual);
  return msg.str();
}

}  // namespace

ScalingDidNotConverge::ScalingDidNotConverge(ScaleResult result)
    : std::runtime_error(describe_failure(result)), result_(std::move(result)) {}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::XU: return "XU";
    case Membership::ZU: return "ZU";
    case Membership::Both: return "Both";
    case Membership::Neither: return "Neither";
  }
  return "unknown";
}

Matrix ZXZDecomposition::reconstruct() const {
  return apply_diagonals(z1, x, z2).scaled(std::polar(1.0, alpha));
}

Matrix XZXZXZDecomposition::reconstruct() const {
  const std::array<Matrix, 4> factors{x0, z0.to_matrix(), x0.adjoint(),
                                      apply_diagonals(z1p, x, z2)};
  return matrix_product(factors);
}

Matrix cyclic_shift(std::size_t n) {
  std::vector<Complex> e(n * n);
  for (std::size_t j = 0; j < n; ++j) e[j * n + (j + 1) % n] = 1.0;
  return Matrix(n, std::move(e));
}

std::vector<std::size_t> permutation_of(const Matrix& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::vector<bool> used(n, false);
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t ones = 0;
    for (std::size_t c = 0; c < n; ++c) {
      const Complex x = m(r, c);
      if (x == Complex(1.0)) {
        perm[r] = c;
        ++ones;
      } else if (x != Complex(0.0)) {
        throw std::invalid_argument("permutation_of: entry is neither 0 nor 1");
      }
    }
    if (ones != 1 || used[perm[r]])
      throw std::invalid_argument("permutation_of: not a permutation matrix");
    used[perm[r]] = true;
  }
  return perm;
}

ZXZDecomposition zxz_decompose(const Matrix& u, const ScaleConfig& cfg, U2Branch branch) {
  if (u.size() == 2) return u2_analytic_zxz(u, branch);

  ScaleResult r = scale(u, cfg);
  if (r.status != ScaleStatus::Converged) throw ScalingDidNotConverge(std::move(r));

  // B = L U R, so U = L^{-1} B R^{-1}; move the (0,0) phases of both inverses
  // into alpha so z1 and z2 start with exactly 0.
  const std::size_t n = u.size();
  const double l0 = r.left.angle(0);
  const double r0 = r.right.angle(0);
  std::vector<double> z1(n), z2(n);
  for (std::size_t j = 0; j < n; ++j) {
    z1[j] = l0 - r.left.angle(j);
    z2[j] = r0 - r.right.angle(j);
  }
  z1[0] = 0.0;
  z2[0] = 0.0;
  return {wrap_angle(-l0 - r0), DiagonalPhase(std::move(z1)), std::move(r.scaled),
          DiagonalPhase(std::move(z2))};
}

XZXZXZDecomposition xzxzxz_decompose(const Matrix& u, const ScaleConfig& cfg, U2Branch branch) {
  const std::size_t n = u.size();
  if (n % 2 != 0) {
    std::ostringstream msg;
    msg << "xzxzxz_decompose: dimension " << n << " is odd";
    throw OddDimension(msg.str());
  }
  ZXZDecomposition d = zxz_decompose(u, cfg, branch);

  // diag(a, ..., a) = X0 diag(1, a, ..., 1, a) X0^{-1} diag(1, a, ..., 1, a).
  std::vector<double> alternating(n, 0.0);
  for (std::size_t j = 1; j < n; j += 2) alternating[j] = d.alpha;
  DiagonalPhase z0(alternating);
  DiagonalPhase z1p = z0 * d.z1;
  return {cyclic_shift(n), std::move(z0), std::move(z1p), std::move(d.x), std::move(d.z2)};
}

Membership membership(const Matrix& m, double tol) {
  const bool xu = line_sum_residual(m) <= tol;

  const std::size_t n = m.size();
  bool zu = std::abs(m(0, 0) - 1.0) <= tol;
  for (std::size_t r = 0; r < n && zu; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (r == c) {
        if (std::abs(std::abs(m(r, c)) - 1.0) > tol) zu = false;
      } else if (std::abs(m(r, c)) > tol) {
        zu = false;
      }
    }
  }
  if (xu && zu) return Membership::Both;
  if (xu) return Membership::XU;
  if (zu) return Membership::ZU;
  return Membership::Neither;
}

Matrix phasor(double theta) {
  return Matrix::from_rows({{1.0, 0.0}, {0.0, std::polar(1.0, theta)}});
}

Matrix negator(double theta) {
  const Complex g = std::polar(1.0, -theta);
  const Complex diag = g * std::cos(theta);
  const Complex off = g * Complex(0.0, std::sin(theta));
  return Matrix::from_rows({{diag, off}, {off, diag}});
}

}  // namespace uscale
