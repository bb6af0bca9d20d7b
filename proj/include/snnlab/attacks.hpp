#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "snnlab/network.hpp"
#include "snnlab/rng.hpp"

namespace snnlab {

enum class AttackKind { Fgsm, Pgd, Rfgsm, Gaussian };

struct AttackConfig {
  double epsilon = 8.0 / 255.0;  // l-inf budget in image units
  double step = 2.0 / 255.0;     // PGD step size
  std::size_t iters = 10;        // PGD iteration count
  bool random_start = true;      // PGD uniform start in the epsilon ball
  AttackKind kind = AttackKind::Pgd;

  void validate() const;
};

// Gradient of a scalar loss with respect to the input image.
using InputGradFn =
    std::function<std::vector<double>(std::span<const double> x, int label)>;

// The standard attack objective: cross-entropy of the network output at x
// against the true label, differentiated through the surrogate.
InputGradFn make_ce_input_grad(const NetworkDef& net, double omega = 1.0);

// sign with sign(0) = 0, so zero-gradient pixels stay untouched.
double sign_or_zero(double g);

// x + epsilon * sign(grad L), clipped to [0,1].
std::vector<double> fgsm(const NetworkDef& net, std::span<const double> x, int label,
                         double epsilon, const InputGradFn& grad_fn);

// Iterated sign steps projected onto the epsilon ball around x intersected
// with [0,1]; optional uniform random start.
std::vector<double> pgd(const NetworkDef& net, std::span<const double> x, int label,
                        const AttackConfig& cfg, const InputGradFn& grad_fn, Rng& rng);

// Training perturbation: random +-0.001 start, then one 4/255 sign step,
// clipped to [0,1].
std::vector<double> rfgsm(const NetworkDef& net, std::span<const double> x, int label, Rng& rng,
                          double omega = 1.0);

constexpr double kRfgsmRandomStep = 0.001;
constexpr double kRfgsmSignStep = 4.0 / 255.0;

// x + iid N(0, sigma^2), clipped to [0,1].
std::vector<double> gaussian_perturb(std::span<const double> x, double sigma, Rng& rng);

}  // namespace snnlab
