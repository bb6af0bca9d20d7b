#pragma once

#include <cstddef>
#include <vector>

#include "snnlab/matrix.hpp"
#include "snnlab/network.hpp"
#include "snnlab/rng.hpp"

namespace snnlab {

// Finite-gain L2 bound of one layer's perturbation dynamics:
// gamma = sqrt(1/(1-leak)) * ||W||, beta = 0.
struct StabilityBound {
  std::size_t layer = 0;           // 1-based
  double gamma = 0.0;
  double beta = 0.0;
  double spectral = 0.0;           // ||W||
  double leak_factor_term = 0.0;   // sqrt(1/(1-leak))
  double effective_leak = 0.0;     // lambda, or lambda*max_t|a[t]| for DLIF
  bool applicable = true;          // false when effective_leak >= 1
  bool heuristic_leak = false;     // true for DLIF layers (artifact-level
                                   // effective-leak extension, not a proven bound)
};

StabilityBound gain_bound(const Matrix& w, double lambda, double tol, Rng& rng);

enum class DriveKind {
  SpikeDiff,  // entries uniform over {-1, 0, 1}, the attainable spike-difference alphabet
  Real,       // entries uniform over [-1, 1], for the direct-coded first layer
};

// Monte-Carlo lower estimate of the layer's true L2 gain: max over random
// drive signals of ||eps||_{L2,[:T]} / ||ds||_{L2,[:T]} with eps driven by
// W*ds. Zero-drive trials are skipped; all trials zero is an error.
double empirical_gain(const Matrix& w, double lambda, std::size_t trials, std::size_t t_steps,
                      Rng& rng, DriveKind kind = DriveKind::SpikeDiff);

// One bound per spiking layer. DLIF layers use the effective leak
// lambda*max_t|a[t]| and are marked heuristic; a layer whose effective leak
// reaches 1 is flagged inapplicable and carries no gamma.
std::vector<StabilityBound> audit_network(const NetworkDef& net);

}  // namespace snnlab
