#include "snnlab/kernels.hpp"

#include <stdexcept>
#include <string>

namespace snnlab {
namespace {

// Below this many multiply-adds the OpenMP fork/join costs more than it buys.
constexpr std::size_t kParallelCutoff = 16 * 1024;

void check_matvec(const Matrix& w, std::size_t xlen, std::size_t ylen, bool transpose) {
  const std::size_t want_x = transpose ? w.rows : w.cols;
  const std::size_t want_y = transpose ? w.cols : w.rows;
  if (xlen != want_x || ylen != want_y) {
    throw std::invalid_argument("matvec: shape mismatch, W is " + std::to_string(w.rows) + "x" +
                                std::to_string(w.cols) + (transpose ? " (transposed)" : "") +
                                ", x has length " + std::to_string(xlen) + ", y has length " +
                                std::to_string(ylen));
  }
}

}  // namespace

namespace kernels {

void matvec(const Matrix& w, std::span<const double> x, std::span<double> y) {
  check_matvec(w, x.size(), y.size(), false);
  const std::size_t n = w.rows;
#pragma omp parallel for schedule(static) if (w.size() >= kParallelCutoff)
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = w.data.data() + i * w.cols;
    double acc = 0.0;
    for (std::size_t j = 0; j < w.cols; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

std::vector<double> matvec(const Matrix& w, std::span<const double> x) {
  std::vector<double> y(w.rows);
  matvec(w, x, y);
  return y;
}

void matvec_transpose(const Matrix& w, std::span<const double> x, std::span<double> y) {
  check_matvec(w, x.size(), y.size(), true);
  const std::size_t n = w.cols;
#pragma omp parallel for schedule(static) if (w.size() >= kParallelCutoff)
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < w.rows; ++i) acc += w.data[i * w.cols + j] * x[i];
    y[j] = acc;
  }
}

std::vector<double> matvec_transpose(const Matrix& w, std::span<const double> x) {
  std::vector<double> y(w.cols);
  matvec_transpose(w, x, y);
  return y;
}

void add_outer(Matrix& g, std::span<const double> a, std::span<const double> b) {
  if (g.rows != a.size() || g.cols != b.size()) {
    throw std::invalid_argument("add_outer: G is " + std::to_string(g.rows) + "x" +
                                std::to_string(g.cols) + " but a,b have lengths " +
                                std::to_string(a.size()) + "," + std::to_string(b.size()));
  }
  const std::size_t n = g.rows;
#pragma omp parallel for schedule(static) if (g.size() >= kParallelCutoff)
  for (std::size_t i = 0; i < n; ++i) {
    double* row = g.data.data() + i * g.cols;
    const double ai = a[i];
    for (std::size_t j = 0; j < g.cols; ++j) row[j] += ai * b[j];
  }
}

}  // namespace kernels

namespace reference {

void matvec(const Matrix& w, std::span<const double> x, std::span<double> y) {
  check_matvec(w, x.size(), y.size(), false);
  for (std::size_t i = 0; i < w.rows; ++i) {
    const double* row = w.data.data() + i * w.cols;
    double acc = 0.0;
    for (std::size_t j = 0; j < w.cols; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

void matvec_transpose(const Matrix& w, std::span<const double> x, std::span<double> y) {
  check_matvec(w, x.size(), y.size(), true);
  for (std::size_t j = 0; j < w.cols; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < w.rows; ++i) acc += w.data[i * w.cols + j] * x[i];
    y[j] = acc;
  }
}

void add_outer(Matrix& g, std::span<const double> a, std::span<const double> b) {
  if (g.rows != a.size() || g.cols != b.size()) {
    throw std::invalid_argument("add_outer: shape mismatch");
  }
  for (std::size_t i = 0; i < g.rows; ++i) {
    double* row = g.data.data() + i * g.cols;
    for (std::size_t j = 0; j < g.cols; ++j) row[j] += a[i] * b[j];
  }
}

}  // namespace reference
}  // namespace snnlab
