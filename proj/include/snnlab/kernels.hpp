#pragma once

#include <span>
#include <vector>

#include "snnlab/matrix.hpp"

// Hot inner loops, OpenMP-parallel over independent output elements. Each
// output element is a serial dot product / row update, so results are
// bitwise identical to the serial reference for any thread count.
// snnlab::reference holds the plain serial versions; tests compare the two
// bitwise and the bench target compares their throughput.

namespace snnlab::kernels {

// y = W x
void matvec(const Matrix& w, std::span<const double> x, std::span<double> y);
std::vector<double> matvec(const Matrix& w, std::span<const double> x);

// y = W^T x
void matvec_transpose(const Matrix& w, std::span<const double> x, std::span<double> y);
std::vector<double> matvec_transpose(const Matrix& w, std::span<const double> x);

// g += a b^T   (g: |a| x |b|)
void add_outer(Matrix& g, std::span<const double> a, std::span<const double> b);

}  // namespace snnlab::kernels

namespace snnlab::reference {

void matvec(const Matrix& w, std::span<const double> x, std::span<double> y);
void matvec_transpose(const Matrix& w, std::span<const double> x, std::span<double> y);
void add_outer(Matrix& g, std::span<const double> a, std::span<const double> b);

}  // namespace snnlab::reference
