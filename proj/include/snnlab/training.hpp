#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "snnlab/dataset.hpp"
#include "snnlab/matrix.hpp"
#include "snnlab/network.hpp"
#include "snnlab/rng.hpp"
#include "snnlab/signal.hpp"
#include "snnlab/surrogate.hpp"

namespace snnlab {

enum class PerturbRegime { Natural, Gaussian, At };

struct TrainConfig {
  double rho = 0.0;           // loss weight of the perturbation-alignment term
  double chi = 0.5;           // mixup mixture between clean and perturbed CE
  double omega = 1.0;         // surrogate width
  std::size_t epochs = 30;
  std::size_t batch_size = 64;
  double lr0 = 0.1;
  double weight_decay = 0.0005;
  PerturbRegime regime = PerturbRegime::Natural;
  std::uint64_t seed = 0;

  void validate() const;
};

// Gradient carriers shaped exactly like the parameters. LIF layers have an
// empty a-gradient entry.
struct GradientSet {
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> dlif_a;
  Matrix readout;
  std::vector<double> input;  // dL/dx, used by the attack generators

  static GradientSet zeros_like(const NetworkDef& net);
  void add(const GradientSet& other);
  void scale(double factor);
};

// Numerically stabilized softmax cross-entropy.
double softmax_cross_entropy(std::span<const double> logits, int label);
// d(CE)/d(logits) = softmax(logits) - onehot(label).
std::vector<double> softmax_cross_entropy_grad(std::span<const double> logits, int label);

// chi * CE(clean) + (1 - chi) * CE(perturbed).
double task_loss(std::span<const double> logits_clean, std::span<const double> logits_perturbed,
                 int label, double chi);

double total_loss(double task, double msmppd, double rho);

// lr0 * (1 + cos(pi * step / total_steps)) / 2.
double cosine_lr(std::size_t step, std::size_t total_steps, double lr0);

// Reverse-mode gradients through the unrolled T-step run recorded in trace.
// The spike derivative is the triangle surrogate (exact when the trace came
// from a relaxed forward). extra_last_layer_current_grad, when given, is an
// additional dL/d(input current of layer L) per step; it reaches W^L and the
// spikes of layer L-1 but not layer L's own recurrence.
GradientSet backward(const NetworkDef& net, const ForwardTrace& trace,
                     std::span<const double> loss_grad_at_logits, double omega,
                     const Signal* extra_last_layer_current_grad = nullptr);

// d(ms_mppd)/d(drive): adjoint of the leaky integrator over the squared sum,
// g[t] = 2*eps[t] + lambda*g[t+1].
Signal ms_mppd_drive_grad(const Signal& drive, double lambda);

// In-place SGD step: p -= lr * (g + weight_decay * p) for weights and
// readout; DLIF a-parameters are updated without weight decay (they sit
// near 1 by construction, not near 0).
void sgd_step(NetworkDef& net, const GradientSet& grads, double lr, double weight_decay);

struct EpochStats {
  double task_loss = 0.0;   // mean over samples
  double msmppd = 0.0;      // mean over samples (always recorded, even at rho = 0)
  double train_accuracy = 0.0;
  double lr_last = 0.0;
};

// One pass over the dataset: shuffle, per-batch perturbation generation per
// the regime, forward pair, backward through both branches, SGD update.
// epoch_index/total_epochs position the cosine schedule. rng is the
// single-writer shuffle stream; per-sample perturbation randomness is
// derived statelessly from (seed, epoch, batch, sample).
EpochStats train_epoch(NetworkDef& net, const Dataset& data, const TrainConfig& cfg, Rng& rng,
                       std::size_t epoch_index, std::size_t total_epochs);

}  // namespace snnlab
