#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "snnlab/matrix.hpp"
#include "snnlab/neuron.hpp"
#include "snnlab/signal.hpp"

namespace snnlab {

enum class NeuronKind { Lif, Dlif };

// Fully connected feedforward SNN: layer_sizes = [N0..NL], weights[l] is
// N^{l+1} x N^l, one neuron kind per spiking layer, a non-spiking linear
// readout on the time-averaged spikes of the last layer. Direct input
// coding: layer 1 sees W0*x as its input current at every step.
struct NetworkDef {
  std::vector<std::size_t> layer_sizes;    // N0..NL (L+1 entries)
  std::vector<Matrix> weights;             // L entries
  std::vector<NeuronKind> kinds;           // L entries
  std::size_t steps = 1;                   // T
  LifParams lif;
  std::vector<std::vector<double>> dlif_a; // L entries; empty vector for LIF layers
  Matrix readout;                          // classes x NL

  std::size_t num_layers() const { return weights.size(); }
  std::size_t input_dim() const { return layer_sizes.front(); }
  std::size_t num_classes() const { return readout.rows; }
  // lambda * a[t] for DLIF, lambda for LIF. layer is 0-based, t 1-based.
  double effective_leak(std::size_t layer, std::size_t t) const;
  void validate() const;
};

// Full time-indexed record of one layer: membrane potential, post-reset
// potential, spikes and input current, each steps x N.
struct LayerTrace {
  Signal v, u, s, input_current;
  LayerTrace() = default;
  LayerTrace(std::size_t steps, std::size_t n)
      : v(steps, n), u(steps, n), s(steps, n), input_current(steps, n) {}
};

struct ForwardTrace {
  std::vector<LayerTrace> layers;  // index l-1 holds spiking layer l
  std::vector<double> input;       // the presented image x
  std::vector<double> rate;        // sum_t s^L[t] / T
  std::vector<double> logits;      // readout * rate
};

// Heaviside spikes for inference/training; Relaxed replaces the spike with
// a differentiable ramp and exists for finite-difference gradient checks.
enum class SpikeMode { Hard, Relaxed };

ForwardTrace forward(const NetworkDef& net, std::span<const double> x,
                     SpikeMode mode = SpikeMode::Hard, double omega = 1.0);

// Two independent traces sharing parameters; no state crosses between them.
std::pair<ForwardTrace, ForwardTrace> forward_pair(const NetworkDef& net,
                                                   std::span<const double> x,
                                                   std::span<const double> x_tilde,
                                                   SpikeMode mode = SpikeMode::Hard,
                                                   double omega = 1.0);

// Difference of recorded layer input currents, clean minus perturbed.
// This is the drive that feeds the perturbation dynamics of that layer.
Signal input_current_difference(const ForwardTrace& clean, const ForwardTrace& perturbed,
                                std::size_t layer);

std::size_t argmax_class(std::span<const double> logits);

}  // namespace snnlab
