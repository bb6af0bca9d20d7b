#pragma once

#include <cstddef>
#include <vector>

#include "snnlab/matrix.hpp"
#include "snnlab/rng.hpp"
#include "snnlab/signal.hpp"

namespace snnlab {

// Largest singular value of w, by power iteration on W^T W starting from a
// seeded random unit vector. Converged when the estimate's relative change
// drops below tol; throws ConvergenceError after max_iters.
double spectral_norm(const Matrix& w, double tol, std::size_t max_iters, Rng& rng);
double spectral_norm(const Matrix& w, Rng& rng);  // tol 1e-12, 10000 iters

// sqrt(sum_{t=1..upto} ||x[t]||^2): L2 norm of the first `upto` steps.
// upto is a 1-based step count, 1 <= upto <= x.steps.
double signal_l2_norm(const Signal& x, std::size_t upto);

// iid N(0, sigma^2) samples.
std::vector<double> gaussian_vector(Rng& rng, std::size_t dim, double sigma);

double dot(std::span<const double> a, std::span<const double> b);
double l2_norm(std::span<const double> x);

}  // namespace snnlab
