#include "snnlab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "snnlab/errors.hpp"
#include "snnlab/kernels.hpp"
#include "snnlab/numerics.hpp"
#include "snnlab/perturbation.hpp"

namespace snnlab {

namespace {

StabilityBound bound_from_parts(std::size_t layer, double spectral, double leak) {
  StabilityBound b;
  b.layer = layer;
  b.spectral = spectral;
  b.effective_leak = leak;
  b.beta = 0.0;
  if (leak >= 1.0) {
    b.applicable = false;
    return b;
  }
  b.leak_factor_term = std::sqrt(1.0 / (1.0 - leak));
  b.gamma = b.leak_factor_term * spectral;
  return b;
}

}  // namespace

StabilityBound gain_bound(const Matrix& w, double lambda, double tol, Rng& rng) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("gain_bound: lambda must lie in (0,1), got " +
                                std::to_string(lambda) + " (the bound diverges at lambda -> 1)");
  }
  return bound_from_parts(0, spectral_norm(w, tol, 10000, rng), lambda);
}

double empirical_gain(const Matrix& w, double lambda, std::size_t trials, std::size_t t_steps,
                      Rng& rng, DriveKind kind) {
  if (trials < 1 || t_steps < 1) {
    throw std::invalid_argument("empirical_gain: trials and T must be >= 1");
  }
  std::vector<double> ratios(trials, -1.0);

#pragma omp parallel for schedule(dynamic)
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng trial_rng = rng.derive(trial);
    Signal ds(t_steps, w.cols);
    for (auto& e : ds.data) {
      e = kind == DriveKind::SpikeDiff
              ? static_cast<double>(trial_rng.uniform_int(-1, 1))
              : trial_rng.uniform(-1.0, 1.0);
    }
    double ds_sq = 0.0;
    for (double e : ds.data) ds_sq += e * e;
    if (ds_sq == 0.0) continue;  // skipped, ratios entry stays -1

    Signal drive(t_steps, w.rows);
    for (std::size_t t = 0; t < t_steps; ++t) kernels::matvec(w, ds.step(t), drive.step(t));
    const PerturbationTrace p = mppd_simplified(drive, lambda);
    ratios[trial] = signal_l2_norm(p.eps, t_steps) / std::sqrt(ds_sq);
  }

  const double best = *std::max_element(ratios.begin(), ratios.end());
  if (best < 0.0) {
    throw NumericError("empirical_gain: every trial drew an all-zero drive");
  }
  return best;
}

std::vector<StabilityBound> audit_network(const NetworkDef& net) {
  net.validate();
  std::vector<StabilityBound> bounds;
  bounds.reserve(net.num_layers());
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    // Deterministic start vectors: the audit takes no RNG of its own.
    Rng rng(0x5EED5EEDULL + l);
    const double spectral = spectral_norm(net.weights[l], 1e-12, 10000, rng);
    double leak = net.lif.lambda;
    bool heuristic = false;
    if (net.kinds[l] == NeuronKind::Dlif) {
      double peak = 0.0;
      for (double a : net.dlif_a[l]) peak = std::max(peak, std::abs(a));
      leak = net.lif.lambda * peak;
      heuristic = true;
    }
    StabilityBound b = bound_from_parts(l + 1, spectral, leak);
    b.heuristic_leak = heuristic;
    bounds.push_back(b);
  }
  return bounds;
}

}  // namespace snnlab
