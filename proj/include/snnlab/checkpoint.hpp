#pragma once

#include <cstdint>
#include <string>

#include "snnlab/network.hpp"

namespace snnlab {

// On-disk training snapshot. Binary layout (documented here; all integers
// and doubles little-endian, doubles IEEE 754 binary64):
//
//   8 bytes  magic "SNNLCKP1"
//   u32      format version (currently 1)
//   u64      epoch counter (epochs completed)
//   u64      rng seed, u64 rng state (shuffle stream)
//   f64      lambda, f64 u_th, u64 T
//   u64      layer count+1 = S, then S x u64 layer sizes
//   per spiking layer: u8 kind (0 lif, 1 dlif)
//   per spiking layer: rows*cols f64 weights, then T f64 a-values if dlif
//   u64 readout rows, then rows*NL f64 readout weights
//   u64 config echo length, then that many bytes of config text
struct Checkpoint {
  std::uint32_t version = 1;
  std::uint64_t epoch = 0;
  std::uint64_t rng_seed = 0;
  std::uint64_t rng_state = 0;
  NetworkDef net;
  std::string config_echo;
};

// Writes to <path>.tmp then renames, so a failed write leaves no partial file.
void save_checkpoint(const Checkpoint& ck, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace snnlab
