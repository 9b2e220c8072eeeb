#pragma once

#include <cstddef>
#include <stdexcept>

#include "uscale/matcore.hpp"
#include "uscale/scaler.hpp"

namespace uscale {

/// U = e^{i alpha} * diag(z1) * x * diag(z2), with x in XU(n) (all line sums
/// 1) and z1, z2 in ZU(n) (first phase exactly 0).
struct ZXZDecomposition {
  double alpha;
  DiagonalPhase z1;
  Matrix x;
  DiagonalPhase z2;

  Matrix reconstruct() const;
};

/// U = x0 * diag(z0) * x0^{-1} * diag(z1p) * x * diag(z2), with x0 the cyclic
/// shift permutation and z0 = (0, alpha, 0, alpha, ...).
struct XZXZXZDecomposition {
  Matrix x0;
  DiagonalPhase z0;
  DiagonalPhase z1p;
  Matrix x;
  DiagonalPhase z2;

  Matrix reconstruct() const;
};

/// Which of the two analytic U(2) factorizations to use.
enum class U2Branch { First, Second };

enum class Membership { XU, ZU, Both, Neither };

std::string_view to_string(Membership m);

class ScalingDidNotConverge : public std::runtime_error {
 public:
  explicit ScalingDidNotConverge(ScaleResult result);
  const ScaleResult& result() const noexcept { return result_; }

 private:
  ScaleResult result_;
};

/// Cyclic shift permutation matrix: row j has its 1 in column (j + 1) mod n.
Matrix cyclic_shift(std::size_t n);

/// Column index of the 1 in each row. Throws std::invalid_argument when `m` is
/// not a 0/1 permutation matrix.
std::vector<std::size_t> permutation_of(const Matrix& m);

/// n = 2 goes through u2_analytic_zxz with `branch`; larger n runs scale().
/// Throws ScalingDidNotConverge, NonUnitaryInput.
ZXZDecomposition zxz_decompose(const Matrix& u, const ScaleConfig& cfg = {},
                               U2Branch branch = U2Branch::First);

/// Throws OddDimension for odd n, plus everything zxz_decompose throws.
XZXZXZDecomposition xzxzxz_decompose(const Matrix& u, const ScaleConfig& cfg = {},
                                     U2Branch branch = U2Branch::First);

/// XU iff all line sums are within tol of 1; ZU iff diagonal, unit-modulus,
/// with (0,0) entry within tol of 1; Both iff both hold.
Membership membership(const Matrix& m, double tol);

/// diag(1, e^{i theta}).
Matrix phasor(double theta);

/// e^{-i theta} [[cos theta, i sin theta], [i sin theta, cos theta]].
Matrix negator(double theta);

}  // namespace uscale
