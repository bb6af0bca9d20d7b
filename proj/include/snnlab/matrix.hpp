#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "snnlab/rng.hpp"

namespace snnlab {

// Dense row-major matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  Matrix(std::size_t r, std::size_t c, std::vector<double> d);

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }

  bool empty() const { return rows == 0 || cols == 0; }
  std::size_t size() const { return rows * cols; }

  Matrix transposed() const;

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);
  // Entries iid N(0, sigma^2), drawn row-major.
  static Matrix random_gaussian(std::size_t r, std::size_t c, double sigma, Rng& rng);
};

bool all_finite(std::span<const double> xs);
bool all_finite(const Matrix& m);

}  // namespace snnlab
