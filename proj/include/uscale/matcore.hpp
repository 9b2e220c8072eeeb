#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace uscale {

using Complex = std::complex<double>;

/// Tolerance on the unitarity residual used by Matrix::checked.
inline constexpr double kCheckedUnitarityTol = 1e-10;

/// Dense n x n complex matrix stored row-major.
///
/// Entries are finite and the object is immutable once built. Nothing in the
/// type forces unitarity; use Matrix::checked when the caller needs it.
class Matrix {
 public:
  /// n x n zero matrix.
  explicit Matrix(std::size_t n);
  /// Takes n*n row-major entries. Throws std::invalid_argument on a size
  /// mismatch, n == 0, or a non-finite entry.
  Matrix(std::size_t n, std::vector<Complex> entries);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
  /// As the entry constructor, but throws NonUnitaryInput when the unitarity
  /// residual exceeds kCheckedUnitarityTol.
  static Matrix checked(std::size_t n, std::vector<Complex> entries);

  std::size_t size() const noexcept { return n_; }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return entries_[row * n_ + col];
  }
  std::span<const Complex> entries() const noexcept { return entries_; }

  Matrix adjoint() const;
  Matrix scaled(Complex factor) const;

 private:
  std::size_t n_;
  std::vector<Complex> entries_;
};

/// Wraps an angle into (-pi, pi].
double wrap_angle(double angle);

/// Diagonal unitary matrix diag(e^{i a_0}, ..., e^{i a_{n-1}}), kept as angles.
///
/// Angles are stored wrapped into (-pi, pi] so every diagonal entry has unit
/// modulus by construction, and products of many diagonals are angle sums.
class DiagonalPhase {
 public:
  /// The n x n identity.
  explicit DiagonalPhase(std::size_t n);
  explicit DiagonalPhase(std::vector<double> angles);

  std::size_t size() const noexcept { return angles_.size(); }
  double angle(std::size_t j) const noexcept { return angles_[j]; }
  std::span<const double> angles() const noexcept { return angles_; }
  Complex entry(std::size_t j) const { return std::polar(1.0, angles_[j]); }

  bool is_identity() const noexcept;
  DiagonalPhase inverse() const;
  Matrix to_matrix() const;

  /// Product of two diagonals (they commute).
  friend DiagonalPhase operator*(const DiagonalPhase& a, const DiagonalPhase& b);

 private:
  std::vector<double> angles_;
};

struct LineSums {
  std::vector<Complex> rows;
  std::vector<Complex> cols;
  Complex matrix_sum;
};

/// y/|y|, or 1 when y is exactly zero.
Complex phi(Complex y) noexcept;

LineSums line_sums(const Matrix& m);

/// n^2 - |sum of all entries|^2.
double potential(const Matrix& m);

/// Max-abs entry of M^H M - I.
double unitarity_residual(const Matrix& m);

/// diag(left) * m * diag(right). Throws DimensionMismatch.
Matrix apply_diagonals(const DiagonalPhase& left, const Matrix& m, const DiagonalPhase& right);

Matrix operator*(const Matrix& a, const Matrix& b);

/// Left-to-right product of a non-empty sequence.
Matrix matrix_product(std::span<const Matrix> factors);

/// Max-abs entrywise difference. Throws DimensionMismatch.
double max_abs_difference(const Matrix& a, const Matrix& b);

}  // namespace uscale
