#include "snnlab/network.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "snnlab/kernels.hpp"
#include "snnlab/surrogate.hpp"

namespace snnlab {

double NetworkDef::effective_leak(std::size_t layer, std::size_t t) const {
  if (kinds[layer] == NeuronKind::Dlif) return lif.lambda * dlif_a[layer][t - 1];
  return lif.lambda;
}

void NetworkDef::validate() const {
  if (layer_sizes.size() < 2) throw std::invalid_argument("NetworkDef: need at least one layer");
  if (weights.size() != layer_sizes.size() - 1 || kinds.size() != weights.size() ||
      dlif_a.size() != weights.size()) {
    throw std::invalid_argument("NetworkDef: weights/kinds/dlif_a must have one entry per layer");
  }
  if (steps < 1) throw std::invalid_argument("NetworkDef: steps must be >= 1");
  lif.validate();
  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (weights[l].rows != layer_sizes[l + 1] || weights[l].cols != layer_sizes[l]) {
      throw std::invalid_argument("NetworkDef: weight " + std::to_string(l + 1) + " is " +
                                  std::to_string(weights[l].rows) + "x" +
                                  std::to_string(weights[l].cols) + ", expected " +
                                  std::to_string(layer_sizes[l + 1]) + "x" +
                                  std::to_string(layer_sizes[l]));
    }
    if (kinds[l] == NeuronKind::Dlif && dlif_a[l].size() != steps) {
      throw std::invalid_argument("NetworkDef: DLIF layer " + std::to_string(l + 1) + " needs " +
                                  std::to_string(steps) + " a-parameters, has " +
                                  std::to_string(dlif_a[l].size()));
    }
  }
  if (readout.cols != layer_sizes.back()) {
    throw std::invalid_argument("NetworkDef: readout has " + std::to_string(readout.cols) +
                                " columns, expected " + std::to_string(layer_sizes.back()));
  }
}

ForwardTrace forward(const NetworkDef& net, std::span<const double> x, SpikeMode mode,
                     double omega) {
  if (x.size() != net.input_dim()) {
    throw std::invalid_argument("forward: input has length " + std::to_string(x.size()) +
                                ", network expects " + std::to_string(net.input_dim()));
  }
  const std::size_t L = net.num_layers();
  const std::size_t T = net.steps;

  ForwardTrace trace;
  trace.input.assign(x.begin(), x.end());
  trace.layers.reserve(L);
  for (std::size_t l = 0; l < L; ++l) trace.layers.emplace_back(T, net.layer_sizes[l + 1]);

  // Direct coding: the first layer's input current is the same at every step.
  const std::vector<double> first_current = kernels::matvec(net.weights[0], x);

  std::vector<LayerState> states;
  states.reserve(L);
  for (std::size_t l = 0; l < L; ++l) states.emplace_back(net.layer_sizes[l + 1]);

  for (std::size_t t = 1; t <= T; ++t) {
    for (std::size_t l = 0; l < L; ++l) {
      LayerTrace& lt = trace.layers[l];
      auto current = lt.input_current.step(t - 1);
      if (l == 0) {
        std::copy(first_current.begin(), first_current.end(), current.begin());
      } else {
        kernels::matvec(net.weights[l], trace.layers[l - 1].s.step(t - 1), current);
      }

      LayerState next(states[l].size());
      if (mode == SpikeMode::Hard) {
        leaky_fire_step(states[l], current, net.effective_leak(l, t), net.lif.u_th, next);
      } else {
        const double leak = net.effective_leak(l, t);
        for (std::size_t i = 0; i < next.size(); ++i) {
          const double v = leak * states[l].u[i] + current[i];
          const double s = relaxed_spike(v, net.lif.u_th, omega);
          next.v[i] = v;
          next.s[i] = s;
          next.u[i] = v * (1.0 - s);
        }
      }
      std::copy(next.v.begin(), next.v.end(), lt.v.step(t - 1).begin());
      std::copy(next.u.begin(), next.u.end(), lt.u.step(t - 1).begin());
      std::copy(next.s.begin(), next.s.end(), lt.s.step(t - 1).begin());
      states[l] = std::move(next);
    }
  }

  const std::size_t nl = net.layer_sizes.back();
  trace.rate.assign(nl, 0.0);
  const Signal& s_last = trace.layers.back().s;
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t i = 0; i < nl; ++i) trace.rate[i] += s_last.at(t, i);
  for (auto& r : trace.rate) r /= static_cast<double>(T);

  trace.logits = kernels::matvec(net.readout, trace.rate);
  return trace;
}

std::pair<ForwardTrace, ForwardTrace> forward_pair(const NetworkDef& net,
                                                   std::span<const double> x,
                                                   std::span<const double> x_tilde,
                                                   SpikeMode mode, double omega) {
  return {forward(net, x, mode, omega), forward(net, x_tilde, mode, omega)};
}

Signal input_current_difference(const ForwardTrace& clean, const ForwardTrace& perturbed,
                                std::size_t layer) {
  if (layer < 1 || layer > clean.layers.size() || layer > perturbed.layers.size()) {
    throw std::invalid_argument("input_current_difference: layer " + std::to_string(layer) +
                                " out of range");
  }
  const Signal& a = clean.layers[layer - 1].input_current;
  const Signal& b = perturbed.layers[layer - 1].input_current;
  Signal d(a.steps, a.dim);
  for (std::size_t i = 0; i < d.data.size(); ++i) d.data[i] = a.data[i] - b.data[i];
  return d;
}

std::size_t argmax_class(std::span<const double> logits) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < logits.size(); ++i)
    if (logits[i] > logits[best]) best = i;
  return best;
}

}  // namespace snnlab
