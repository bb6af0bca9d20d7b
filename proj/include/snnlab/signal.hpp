#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace snnlab {

// Discrete-time vector signal: `steps` time steps of dimension `dim`.
// Time indices are 0-based internally; contexts that speak of t = 1..T map
// t to step(t-1).
struct Signal {
  std::size_t steps = 0;
  std::size_t dim = 0;
  std::vector<double> data;  // steps x dim, row-major in time

  Signal() = default;
  Signal(std::size_t t, std::size_t d) : steps(t), dim(d), data(t * d, 0.0) {}

  std::span<double> step(std::size_t t) { return {data.data() + t * dim, dim}; }
  std::span<const double> step(std::size_t t) const { return {data.data() + t * dim, dim}; }

  double& at(std::size_t t, std::size_t i) { return data[t * dim + i]; }
  double at(std::size_t t, std::size_t i) const { return data[t * dim + i]; }

  static Signal constant(std::size_t steps, std::span<const double> value) {
    Signal s(steps, value.size());
    for (std::size_t t = 0; t < steps; ++t)
      for (std::size_t i = 0; i < value.size(); ++i) s.at(t, i) = value[i];
    return s;
  }

  static Signal constant_scalar(std::size_t steps, double value) {
    Signal s(steps, 1);
    for (std::size_t t = 0; t < steps; ++t) s.at(t, 0) = value;
    return s;
  }
};

}  // namespace snnlab
