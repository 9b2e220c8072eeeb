#include "uscale/landscape.hpp"

#include <algorithm>
#include <cmath>

namespace uscale {

double LandscapeGradient::max_abs() const {
  double worst = 0.0;
  for (double g : dlambda) worst = std::max(worst, std::abs(g));
  for (double g : drho) worst = std::max(worst, std::abs(g));
  return worst;
}

LandscapeGradient gradient(const Matrix& a) {
  const LineSums s = line_sums(a);
  const double p = s.matrix_sum.real();
  const double q = s.matrix_sum.imag();
  const std::size_t n = a.size();
  LandscapeGradient g{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    g.dlambda[j] = 2.0 * (p * s.rows[j].imag() - q * s.rows[j].real());
    g.drho[j] = 2.0 * (p * s.cols[j].imag() - q * s.cols[j].real());
  }
  return g;
}

StationaryClass classify_stationary(const Matrix& a, double tol) {
  if (gradient(a).max_abs() > tol) return StationaryClass::NotStationary;
  if (std::abs(line_sums(a).matrix_sum) < tol) return StationaryClass::GlobalMaxZeroSum;
  return StationaryClass::ConstantArgumentLineSums;
}

}  // namespace uscale

namespace uscale {

LandscapeGradient finite_difference_gradient(const Matrix& a, double h) {
  const std::size_t n = a.size();
  LandscapeGradient g{std::vector<double>(n), std::vector<double>(n)};
  auto shifted = [&](std::size_t axis, double step) {
    std::vector<double> lambda(n, 0.0), rho(n, 0.0);
    if (axis < n)
      lambda[axis] = step;
    else
      rho[axis - n] = step;
    return potential(apply_diagonals(DiagonalPhase(lambda), a, DiagonalPhase(rho)));
  };
  for (std::size_t axis = 0; axis < 2 * n; ++axis) {
    const double d = (shifted(axis, h) - shifted(axis, -h)) / (2.0 * h);
    (axis < n ? g.dlambda[axis] : g.drho[axis - n]) = d;
  }
  return g;
}

}  // namespace uscale
