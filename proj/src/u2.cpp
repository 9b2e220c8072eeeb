#include "uscale/u2.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "uscale/errors.hpp"

namespace uscale {

namespace {

// Below this modulus an entry of a U(2) matrix counts as zero (pole cosets).
constexpr double kPoleTol = 1e-14;
constexpr double kDegenerateTol = 1e-9;
constexpr double kSeparatrixTol = 1e-9;

void require_u2(const Matrix& u, const char* who) {
  if (u.size() != 2) {
    std::ostringstream msg;
    msg << who << ": expected a 2x2 matrix, got " << u.size() << "x" << u.size();
    throw WrongDimension(msg.str());
  }
  const double residual = unitarity_residual(u);
  if (residual > kScaleUnitarityTol) {
    std::ostringstream msg;
    msg << who << ": unitarity residual " << residual << " exceeds " << kScaleUnitarityTol;
    throw NonUnitaryInput(msg.str(), residual);
  }
}

}  // namespace

std::string_view to_string(Attractor a) {
  switch (a) {
    case Attractor::B: return "B";
    case Attractor::Bprime: return "Bprime";
    case Attractor::Separatrix: return "Separatrix";
  }
  return "unknown";
}

U2Params u2_params(const Matrix& u) {
  require_u2(u, "u2_params");
  const double c = std::abs(u(0, 0));
  const double s = std::abs(u(0, 1));
  const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);

  U2Params p{};
  p.phi = std::atan2(s, c);
  p.theta = std::arg(det) / 2.0;
  p.psi = c > kPoleTol ? wrap_angle(std::arg(u(0, 0)) - p.theta) : 0.0;
  p.chi = s > kPoleTol ? wrap_angle(std::arg(u(0, 1)) - p.theta) : 0.0;
  return p;
}

Matrix u2_from_params(const U2Params& p) {
  const double c = std::cos(p.phi);
  const double s = std::sin(p.phi);
  const Complex g = std::polar(1.0, p.theta);
  return Matrix::from_rows({
      {g * std::polar(c, p.psi), g * std::polar(s, p.chi)},
      {-g * std::polar(s, -p.chi), g * std::polar(c, -p.psi)},
  });
}

ZXZDecomposition u2_analytic_zxz(const Matrix& u, U2Branch branch) {
  const U2Params p = u2_params(u);
  constexpr double half_pi = std::numbers::pi / 2;

  if (std::sin(p.phi) <= kPoleTol) {
    // Diagonal input: everything fits in the phase and z2.
    return {wrap_angle(p.theta + p.psi), DiagonalPhase(2), Matrix::identity(2),
            DiagonalPhase({0.0, -2.0 * p.psi})};
  }
  if (branch == U2Branch::First) {
    return {wrap_angle(p.theta + p.phi + p.psi), DiagonalPhase({0.0, half_pi - p.psi - p.chi}),
            negator(p.phi), DiagonalPhase({0.0, -half_pi - p.psi + p.chi})};
  }
  return {wrap_angle(p.theta - p.phi + p.psi), DiagonalPhase({0.0, -half_pi - p.psi - p.chi}),
          negator(-p.phi), DiagonalPhase({0.0, half_pi - p.psi + p.chi})};
}

AttractorPrediction u2_predict_attractor(const Matrix& u) {
  const U2Params p = u2_params(u);
  if (p.phi < kDegenerateTol || p.phi > std::numbers::pi / 2 - kDegenerateTol) {
    std::ostringstream msg;
    msg << "u2_predict_attractor: phi = " << p.phi
        << " lies in the IDENTITY or NOT double coset";
    throw DegenerateCoset(msg.str());
  }
  const double d = wrap_angle(p.chi - p.psi);
  if (std::abs(d) < kSeparatrixTol || std::abs(d) > std::numbers::pi - kSeparatrixTol)
    return {Attractor::Separatrix};
  return {d > 0.0 ? Attractor::B : Attractor::Bprime};
}

Matrix u2_attractor_b(double phi) { return negator(phi); }

Matrix u2_attractor_bprime(double phi) { return negator(-phi); }

double u2_convergence_ratio(double phi) {
  const double c = std::cos(2.0 * phi);
  return c * c * c * c;
}

}  // namespace uscale
