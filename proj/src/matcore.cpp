#include "uscale/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "uscale/errors.hpp"

namespace uscale {

Matrix::Matrix(std::size_t n) : n_(n), entries_(n * n) {
  if (n == 0) throw std::invalid_argument("matrix dimension must be at least 1");
}

Matrix::Matrix(std::size_t n, std::vector<Complex> entries) : n_(n), entries_(std::move(entries)) {
  if (n == 0) throw std::invalid_argument("matrix dimension must be at least 1");
  if (entries_.size() != n * n) {
    std::ostringstream msg;
    msg << "expected " << n * n << " entries for n = " << n << ", got " << entries_.size();
    throw std::invalid_argument(msg.str());
  }
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (!std::isfinite(entries_[k].real()) || !std::isfinite(entries_[k].imag())) {
      std::ostringstream msg;
      msg << "entry (" << k / n << "," << k % n << ") is not finite";
      throw std::invalid_argument(msg.str());
    }
  }
}

Matrix Matrix::identity(std::size_t n) {
  std::vector<Complex> e(n * n);
  for (std::size_t j = 0; j < n; ++j) e[j * n + j] = 1.0;
  return Matrix(n, std::move(e));
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t n = rows.size();
  std::vector<Complex> e;
  e.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw std::invalid_argument("from_rows: matrix must be square");
    e.insert(e.end(), row.begin(), row.end());
  }
  return Matrix(n, std::move(e));
}

Matrix Matrix::checked(std::size_t n, std::vector<Complex> entries) {
  Matrix m(n, std::move(entries));
  const double residual = unitarity_residual(m);
  if (residual > kCheckedUnitarityTol) {
    std::ostringstream msg;
    msg << "matrix is not unitary: residual " << residual << " exceeds " << kCheckedUnitarityTol;
    throw NonUnitaryInput(msg.str(), residual);
  }
  return m;
}

Matrix Matrix::adjoint() const {
  std::vector<Complex> e(n_ * n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) e[c * n_ + r] = std::conj((*this)(r, c));
  return Matrix(n_, std::move(e));
}

Matrix Matrix::scaled(Complex factor) const {
  std::vector<Complex> e(entries_);
  for (auto& x : e) x *= factor;
  return Matrix(n_, std::move(e));
}

double wrap_angle(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(angle, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

DiagonalPhase::DiagonalPhase(std::size_t n) : angles_(n, 0.0) {
  if (n == 0) throw std::invalid_argument("diagonal dimension must be at least 1");
}

DiagonalPhase::DiagonalPhase(std::vector<double> angles) : angles_(std::move(angles)) {
  if (angles_.empty()) throw std::invalid_argument("diagonal dimension must be at least 1");
  for (auto& a : angles_) {
    if (!std::isfinite(a)) throw std::invalid_argument("diagonal phase is not finite");
    a = wrap_angle(a);
  }
}

bool DiagonalPhase::is_identity() const noexcept {
  return std::all_of(angles_.begin(), angles_.end(), [](double a) { return a == 0.0; });
}

DiagonalPhase DiagonalPhase::inverse() const {
  std::vector<double> a(angles_);
  for (auto& x : a) x = -x;
  return DiagonalPhase(std::move(a));
}

Matrix DiagonalPhase::to_matrix() const {
  const std::size_t n = size();
  std::vector<Complex> e(n * n);
  for (std::size_t j = 0; j < n; ++j) e[j * n + j] = entry(j);
  return Matrix(n, std::move(e));
}

DiagonalPhase operator*(const DiagonalPhase& a, const DiagonalPhase& b) {
  if (a.size() != b.size()) throw DimensionMismatch("diagonal product: sizes differ");
  std::vector<double> sum(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) sum[j] = a.angles_[j] + b.angles_[j];
  return DiagonalPhase(std::move(sum));
}

Complex phi(Complex y) noexcept {
  const double r = std::abs(y);
  if (r == 0.0) return {1.0, 0.0};
  return y / r;
}

LineSums line_sums(const Matrix& m) {
  const std::size_t n = m.size();
  LineSums s{std::vector<Complex>(n), std::vector<Complex>(n), {}};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      s.rows[r] += m(r, c);
      s.cols[c] += m(r, c);
    }
  }
  for (const auto& r : s.rows) s.matrix_sum += r;
  return s;
}

double potential(const Matrix& m) {
  Complex total = 0.0;
  for (const auto& x : m.entries()) total += x;
  const double n = static_cast<double>(m.size());
  return n * n - std::norm(total);
}

double unitarity_residual(const Matrix& m) {
  const std::size_t n = m.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex dot = 0.0;
      for (std::size_t k = 0; k < n; ++k) dot += std::conj(m(k, i)) * m(k, j);
      if (i == j) dot -= 1.0;
      worst = std::max(worst, std::abs(dot));
    }
  }
  return worst;
}

Matrix apply_diagonals(const DiagonalPhase& left, const Matrix& m, const DiagonalPhase& right) {
  const std::size_t n = m.size();
  if (left.size() != n || right.size() != n)
    throw DimensionMismatch("apply_diagonals: diagonal size does not match matrix");
  std::vector<Complex> e(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const Complex l = left.entry(r);
    for (std::size_t c = 0; c < n; ++c) e[r * n + c] = l * m(r, c) * right.entry(c);
  }
  return Matrix(n, std::move(e));
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw DimensionMismatch("matrix product: sizes differ");
  std::vector<Complex> e(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex x = a(r, k);
      for (std::size_t c = 0; c < n; ++c) e[r * n + c] += x * b(k, c);
    }
  return Matrix(n, std::move(e));
}

Matrix matrix_product(std::span<const Matrix> factors) {
  if (factors.empty()) throw std::invalid_argument("matrix_product: empty sequence");
  Matrix acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = acc * factors[i];
  return acc;
}

double max_abs_difference(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) throw DimensionMismatch("max_abs_difference: sizes differ");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
  return worst;
}

}  // namespace uscale
