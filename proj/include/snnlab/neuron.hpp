#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace snnlab {

// Leaky integrate-and-fire parameters. lambda is the per-step leak on the
// post-reset potential, u_th the firing threshold.
struct LifParams {
  double lambda = 0.99;
  double u_th = 1.0;

  void validate() const;  // 0 < lambda < 1, u_th > 0
};

// LIF with a trainable per-time-step leak modulation a[t] shared by all
// neurons of a layer: effective leak at step t is lambda * a[t].
struct DlifParams {
  LifParams base;
  std::vector<double> a;  // one entry per time step, t = 1..T -> a[t-1]
};

// One layer's state after a step: membrane potential v, post-reset
// potential u = v*(1-s), and binary spikes s.
struct LayerState {
  std::vector<double> v;
  std::vector<double> u;
  std::vector<double> s;

  explicit LayerState(std::size_t n) : v(n, 0.0), u(n, 0.0), s(n, 0.0) {}
  std::size_t size() const { return v.size(); }
};

// v' = lambda*u_prev + I; s' = 1 iff v' >= u_th (firing at exact threshold);
// u' = v'*(1-s'). Hard reset to 0, resting potential 0.
LayerState lif_step(const LayerState& prev, std::span<const double> input_current,
                    const LifParams& p);

// Same update with leak lambda*a[t]; t is the 1-based time index.
LayerState dlif_step(const LayerState& prev, std::span<const double> input_current,
                     const DlifParams& p, std::size_t t);

// Shared core: one update with an explicit effective leak. The trace replay
// tests and the forward pass both go through here so results are bitwise
// reproducible.
void leaky_fire_step(const LayerState& prev, std::span<const double> input_current,
                     double effective_leak, double u_th, LayerState& out);

}  // namespace snnlab
