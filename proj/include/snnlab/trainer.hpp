#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snnlab/checkpoint.hpp"
#include "snnlab/config.hpp"
#include "snnlab/dataset.hpp"
#include "snnlab/network.hpp"
#include "snnlab/training.hpp"

namespace snnlab {

// Everything a full training run needs: the optimizer config, the network
// architecture, datasets, and evaluation/persistence cadence.
struct RunConfig {
  TrainConfig train;
  std::vector<std::size_t> layer_sizes;
  std::vector<NeuronKind> kinds;
  std::size_t steps = 8;
  LifParams lif;
  std::size_t classes = 2;

  DatasetSpec train_data;
  DatasetSpec eval_data;

  std::size_t eval_every = 1;        // epochs between eval rows; 0 = final only
  double eval_epsilon = 8.0 / 255.0;
  double eval_step = 2.0 / 255.0;
  std::size_t eval_pgd_iters = 10;
  std::size_t checkpoint_every = 0;  // 0 = final only

  std::string config_echo;  // original config text, stored in checkpoints
};

RunConfig parse_run_config(const Config& cfg);

// Seeded He-style init: weights N(0, sqrt(2/fan_in)), readout
// N(0, sqrt(1/fan_in)), DLIF a-parameters start at 1.
NetworkDef build_network(const RunConfig& cfg);

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based, epochs completed
  double task_loss = 0.0;
  double msmppd = 0.0;
  double train_acc = 0.0;
  double clean_acc = -1.0;  // -1 when not evaluated this epoch
  double pgd_acc = -1.0;
};

struct TrainOutcome {
  NetworkDef net;
  std::vector<EpochRecord> history;
  std::uint64_t rng_state_final = 0;
};

// In-memory training loop (no files): epochs of train_epoch plus the eval
// cadence. Starts from `start` when resuming.
TrainOutcome train_model(const RunConfig& cfg, const Checkpoint* resume = nullptr);

// CLI entry: train_model plus metrics CSV and checkpoint files under out_dir.
TrainOutcome run_training(const RunConfig& cfg, const std::string& out_dir,
                          const Checkpoint* resume = nullptr);

Checkpoint make_checkpoint(const NetworkDef& net, const RunConfig& cfg, std::uint64_t epoch,
                           std::uint64_t rng_state);

}  // namespace snnlab
