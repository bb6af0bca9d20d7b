#include "snnlab/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace snnlab {

Matrix::Matrix(std::size_t r, std::size_t c, std::vector<double> d)
    : rows(r), cols(c), data(std::move(d)) {
  if (data.size() != rows * cols) {
    throw std::invalid_argument("Matrix: data length " + std::to_string(data.size()) +
                                " does not equal rows*cols = " + std::to_string(rows * cols));
  }
}

Matrix Matrix::transposed() const {
  Matrix t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::random_gaussian(std::size_t r, std::size_t c, double sigma, Rng& rng) {
  Matrix m(r, c);
  for (auto& v : m.data) v = rng.gaussian(sigma);
  return m;
}

bool all_finite(std::span<const double> xs) {
  for (double x : xs)
    if (!std::isfinite(x)) return false;
  return true;
}

bool all_finite(const Matrix& m) { return all_finite(std::span<const double>(m.data)); }

}  // namespace snnlab
