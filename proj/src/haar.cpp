#include "uscale/haar.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace uscale {

Complex complex_normal(RngStream& rng) {
  // |z|^2 is Exp(1) and arg z is uniform, so E|z|^2 = 1.
  const double radius = std::sqrt(-std::log(rng.uniform_open_zero()));
  const double angle = 2.0 * std::numbers::pi * rng.uniform();
  return std::polar(radius, angle);
}

Matrix sample_unitary(std::size_t n, RngStream& rng) {
  if (n == 0) throw std::invalid_argument("sample_unitary: n must be at least 1");
  // Column-major scratch so each column is contiguous.
  std::vector<Complex> q(n * n);
  for (auto& x : q) x = complex_normal(rng);

  auto col = [&](std::size_t j) { return q.data() + j * n; };
  for (std::size_t j = 0; j < n; ++j) {
    Complex* v = col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        const Complex* u = col(i);
        Complex dot = 0.0;
        for (std::size_t k = 0; k < n; ++k) dot += std::conj(u[k]) * v[k];
        for (std::size_t k = 0; k < n; ++k) v[k] -= dot * u[k];
      }
    }
    double norm2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) norm2 += std::norm(v[k]);
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t k = 0; k < n; ++k) v[k] *= inv;
  }

  std::vector<Complex> rowmajor(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) rowmajor[r * n + c] = q[c * n + r];
  return Matrix(n, std::move(rowmajor));
}

}  // namespace uscale
