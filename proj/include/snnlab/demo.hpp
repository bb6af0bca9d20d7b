#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace snnlab {

// The perturbation-dynamics demonstration: one LIF neuron (lambda 0.99,
// u_th 1) driven by a constant 0.3*u_th input, against (a) a constant
// +0.1*u_th perturbation and (b) additive temporal Gaussian noise with
// std 0.3*u_th. All difference curves are perturbed-minus-clean.
struct MppdDemoResult {
  std::size_t steps = 0;

  // Constant-perturbation scenario.
  std::vector<double> eps_simplified;    // smooth leaky integration of +0.1
  std::vector<double> eps_unsimplified;  // membrane difference with resets
  std::vector<double> tasad_prefix;      // metrics over the prefix [1..t]
  std::vector<double> std_prefix;
  std::size_t first_spike_step = 0;      // 1-based, earliest spike of either run

  // Gaussian-noise scenario.
  std::vector<double> noise;
  std::vector<double> eps_gaussian_simplified;
  std::vector<double> eps_gaussian_unsimplified;
  std::vector<double> tasad_prefix_gaussian;
  std::vector<double> std_prefix_gaussian;
  double noise_lag1_autocorr = 0.0;
  double eps_lag1_autocorr = 0.0;
};

MppdDemoResult run_mppd_demo(std::size_t steps, std::uint64_t seed);

// Emits mppd_constant.csv / mppd_gaussian.csv and matching SVG charts.
void write_mppd_demo_outputs(const MppdDemoResult& r, std::uint64_t seed,
                             const std::string& out_dir);

double lag1_autocorrelation(const std::vector<double>& xs);

}  // namespace snnlab
