#include "snnlab/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "snnlab/errors.hpp"
#include "snnlab/kernels.hpp"

namespace snnlab {

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double l2_norm(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double spectral_norm(const Matrix& w, double tol, std::size_t max_iters, Rng& rng) {
  if (w.empty()) throw std::invalid_argument("spectral_norm: empty matrix");
  if (!(tol > 0.0)) throw std::invalid_argument("spectral_norm: tol must be positive");

  std::vector<double> v(w.cols);
  for (auto& e : v) e = rng.gaussian(1.0);
  double vnorm = l2_norm(v);
  if (vnorm == 0.0) {
    v.assign(w.cols, 0.0);
    v[0] = 1.0;
    vnorm = 1.0;
  }
  for (auto& e : v) e /= vnorm;

  std::vector<double> wv(w.rows), wtwv(w.cols);
  double sigma = 0.0;
  double rel_change = 1.0;
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    kernels::matvec(w, v, wv);
    const double next = l2_norm(wv);  // ||W v|| with unit v: Rayleigh estimate of sigma
    if (next == 0.0) return 0.0;      // v in the null space and no better direction found
    kernels::matvec_transpose(w, wv, wtwv);
    const double znorm = l2_norm(wtwv);
    if (znorm == 0.0) return next;
    for (std::size_t i = 0; i < w.cols; ++i) v[i] = wtwv[i] / znorm;

    rel_change = std::abs(next - sigma) / next;
    sigma = next;
    if (iter > 0 && rel_change <= tol) return sigma;
  }
  throw ConvergenceError("spectral_norm: no convergence after " + std::to_string(max_iters) +
                             " iterations (last estimate " + std::to_string(sigma) +
                             ", last relative change " + std::to_string(rel_change) + ")",
                         sigma, rel_change);
}

double spectral_norm(const Matrix& w, Rng& rng) { return spectral_norm(w, 1e-12, 10000, rng); }

double signal_l2_norm(const Signal& x, std::size_t upto) {
  if (upto < 1 || upto > x.steps) {
    throw std::invalid_argument("signal_l2_norm: upto = " + std::to_string(upto) +
                                " out of range [1, " + std::to_string(x.steps) + "]");
  }
  double acc = 0.0;
  for (std::size_t t = 0; t < upto; ++t) {
    const auto s = x.step(t);
    acc += dot(s, s);
  }
  return std::sqrt(acc);
}

std::vector<double> gaussian_vector(Rng& rng, std::size_t dim, double sigma) {
  if (sigma < 0.0) throw std::invalid_argument("gaussian_vector: sigma must be >= 0");
  return rng.gaussian_vector(dim, sigma);
}

}  // namespace snnlab
