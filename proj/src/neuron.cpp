#include "snnlab/neuron.hpp"

#include <stdexcept>
#include <string>

namespace snnlab {

void LifParams::validate() const {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("LifParams: lambda must lie in (0,1), got " +
                                std::to_string(lambda));
  }
  if (!(u_th > 0.0)) {
    throw std::invalid_argument("LifParams: u_th must be positive, got " + std::to_string(u_th));
  }
}

void leaky_fire_step(const LayerState& prev, std::span<const double> input_current,
                     double effective_leak, double u_th, LayerState& out) {
  const std::size_t n = prev.size();
  if (input_current.size() != n || out.size() != n) {
    throw std::invalid_argument("leaky_fire_step: state has " + std::to_string(n) +
                                " neurons but input has " + std::to_string(input_current.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double v = effective_leak * prev.u[i] + input_current[i];
    const double s = v >= u_th ? 1.0 : 0.0;
    out.v[i] = v;
    out.s[i] = s;
    out.u[i] = v * (1.0 - s);
  }
}

LayerState lif_step(const LayerState& prev, std::span<const double> input_current,
                    const LifParams& p) {
  LayerState out(prev.size());
  leaky_fire_step(prev, input_current, p.lambda, p.u_th, out);
  return out;
}

LayerState dlif_step(const LayerState& prev, std::span<const double> input_current,
                     const DlifParams& p, std::size_t t) {
  if (t < 1 || t > p.a.size()) {
    throw std::invalid_argument("dlif_step: time index " + std::to_string(t) +
                                " out of range [1, " + std::to_string(p.a.size()) + "]");
  }
  LayerState out(prev.size());
  leaky_fire_step(prev, input_current, p.base.lambda * p.a[t - 1], p.base.u_th, out);
  return out;
}

}  // namespace snnlab
