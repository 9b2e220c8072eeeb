#pragma once

#include <string_view>

#include "uscale/matcore.hpp"
#include "uscale/zxz.hpp"

namespace uscale {

/// Coordinates of
///   U = e^{i theta} [[cos(phi) e^{i psi},  sin(phi) e^{i chi}],
///                    [-sin(phi) e^{-i chi}, cos(phi) e^{-i psi}]].
/// phi is the double-coset label.
struct U2Params {
  double phi;
  double theta;
  double psi;
  double chi;
};

enum class Attractor { B, Bprime, Separatrix };

std::string_view to_string(Attractor a);

struct AttractorPrediction {
  Attractor target;
};

/// phi in [0, pi/2] from |U00| and |U01|; theta is half the principal
/// argument of det U, so theta in (-pi/2, pi/2]; psi and chi follow from the
/// phases of U00 and U01. At phi = 0 chi is set to 0, at phi = pi/2 psi is.
/// Throws WrongDimension, NonUnitaryInput.
U2Params u2_params(const Matrix& u);

Matrix u2_from_params(const U2Params& p);

/// First branch: alpha = theta + phi + psi, x = negator(phi).
/// Second branch: alpha = theta - phi + psi, x = negator(-phi).
/// In the IDENTITY coset (phi = 0) the factors are x = I, z1 = I.
ZXZDecomposition u2_analytic_zxz(const Matrix& u, U2Branch branch);

/// chi - psi in (0, pi) ends in B = negator(phi), in (-pi, 0) in
/// B' = negator(-phi), and exactly 0 or pi is the separatrix.
/// Throws DegenerateCoset when phi is 0 or pi/2.
AttractorPrediction u2_predict_attractor(const Matrix& u);

/// Unit line-sum representatives of the double coset labelled phi.
Matrix u2_attractor_b(double phi);
Matrix u2_attractor_bprime(double phi);

/// Per-step potential ratio near the attractor: cos^4(2 phi).
double u2_convergence_ratio(double phi);

}  // namespace uscale
