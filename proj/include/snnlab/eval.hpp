#pragma once

#include <cstdint>

#include "snnlab/attacks.hpp"
#include "snnlab/dataset.hpp"
#include "snnlab/network.hpp"

namespace snnlab {

double clean_accuracy(const NetworkDef& net, const Dataset& data);

// Accuracy after attacking every sample. Per-sample randomness is derived
// from (seed, sample index), so results are reproducible and independent of
// evaluation order.
double attacked_accuracy(const NetworkDef& net, const Dataset& data, const AttackConfig& cfg,
                         std::uint64_t seed, double omega = 1.0);

double gaussian_accuracy(const NetworkDef& net, const Dataset& data, double sigma,
                         std::uint64_t seed);

}  // namespace snnlab
