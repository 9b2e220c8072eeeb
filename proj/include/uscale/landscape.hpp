#pragma once

#include <vector>

#include "uscale/matcore.hpp"

namespace uscale {

/// Default tolerance for classify_stationary.
inline constexpr double kStationaryTol = 1e-8;

/// Partial derivatives of the potential of diag(e^{i lambda}) A diag(e^{i rho})
/// with respect to lambda_j and rho_j, at lambda = rho = 0.
struct LandscapeGradient {
  std::vector<double> dlambda;
  std::vector<double> drho;

  double max_abs() const;
};

enum class StationaryClass { NotStationary, GlobalMaxZeroSum, ConstantArgumentLineSums };

/// With r_j = s_j + i t_j, c_j = d_j + i e_j and matrix sum p + i q:
///   dlambda_j = 2 (p t_j - q s_j),   drho_j = 2 (p e_j - q d_j).
LandscapeGradient gradient(const Matrix& a);

/// NotStationary when some gradient component exceeds tol. Otherwise
/// GlobalMaxZeroSum when |matrix sum| < tol, else ConstantArgumentLineSums:
/// a zero gradient forces every line sum to be a real multiple of the matrix
/// sum, so the nonzero line sums lie on one line through the origin.
StationaryClass classify_stationary(const Matrix& a, double tol = kStationaryTol);

}  // namespace uscale

namespace uscale {

/// Central finite-difference estimate of the same gradient, by evaluating the
/// potential of diag(e^{i lambda}) A diag(e^{i rho}) at +-h along each axis.
LandscapeGradient finite_difference_gradient(const Matrix& a, double h);

}  // namespace uscale
