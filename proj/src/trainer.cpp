#include "snnlab/trainer.hpp"

#include <cmath>
#include <filesystem>
#include <functional>

#include "snnlab/csv.hpp"
#include "snnlab/errors.hpp"
#include "snnlab/eval.hpp"

namespace snnlab {

namespace {

DatasetSpec parse_dataset(const Config& cfg, const std::string& prefix) {
  DatasetSpec spec;
  const std::string kind = cfg.get_string("dataset");
  if (kind == "blobs") {
    spec.kind = DatasetKind::Blobs;
    spec.blobs_classes = static_cast<std::size_t>(cfg.get_int("blobs_classes"));
    spec.blobs_per_class = static_cast<std::size_t>(cfg.get_int(prefix + "_per_class"));
    spec.blobs_noise_std = cfg.get_double("blobs_noise_std");
    spec.blobs_seed = static_cast<std::uint64_t>(cfg.get_int(prefix + "_blobs_seed"));
    for (std::size_t c = 0; c < spec.blobs_classes; ++c) {
      spec.blobs_centers.push_back(cfg.get_double_list("blobs_center_" + std::to_string(c)));
    }
  } else if (kind == "idx") {
    spec.kind = DatasetKind::Idx;
    spec.idx_images = cfg.get_string(prefix + "_images");
    spec.idx_labels = cfg.get_string(prefix + "_labels");
    spec.idx_subset = static_cast<std::size_t>(cfg.get_int_or(prefix + "_subset", 0));
  } else {
    throw DataError("config: dataset must be 'blobs' or 'idx', got '" + kind + "'");
  }
  return spec;
}

using EpochSink = std::function<void(const EpochRecord&, const NetworkDef&, std::uint64_t)>;

TrainOutcome run_loop(const RunConfig& cfg, const Checkpoint* resume, const EpochSink& sink) {
  TrainOutcome out;
  Rng rng(cfg.train.seed);
  std::size_t start_epoch = 0;
  if (resume) {
    out.net = resume->net;
    out.net.validate();
    rng.set_state(resume->rng_state);
    start_epoch = resume->epoch;
  } else {
    out.net = build_network(cfg);
  }

  const Dataset train_set = load_dataset(cfg.train_data);
  const Dataset eval_set = load_dataset(cfg.eval_data);

  AttackConfig pgd_cfg;
  pgd_cfg.kind = AttackKind::Pgd;
  pgd_cfg.epsilon = cfg.eval_epsilon;
  pgd_cfg.step = cfg.eval_step;
  pgd_cfg.iters = cfg.eval_pgd_iters;

  for (std::size_t e = start_epoch; e < cfg.train.epochs; ++e) {
    const EpochStats stats = train_epoch(out.net, train_set, cfg.train, rng, e, cfg.train.epochs);
    EpochRecord rec;
    rec.epoch = e + 1;
    rec.task_loss = stats.task_loss;
    rec.msmppd = stats.msmppd;
    rec.train_acc = stats.train_accuracy;
    const bool last = (e + 1 == cfg.train.epochs);
    if (last || (cfg.eval_every > 0 && (e + 1) % cfg.eval_every == 0)) {
      rec.clean_acc = clean_accuracy(out.net, eval_set);
      rec.pgd_acc = attacked_accuracy(out.net, eval_set, pgd_cfg, cfg.train.seed ^ 0xE7A1,
                                      cfg.train.omega);
    }
    out.history.push_back(rec);
    if (sink) sink(rec, out.net, rng.state());
  }
  out.rng_state_final = rng.state();
  return out;
}

}  // namespace

RunConfig parse_run_config(const Config& cfg) {
  RunConfig rc;
  rc.config_echo = cfg.text();

  // The core run parameters have no silent defaults; they must be stated.
  rc.lif.lambda = cfg.get_double("lambda");
  rc.lif.u_th = cfg.get_double("u_th");
  rc.steps = static_cast<std::size_t>(cfg.get_int("T"));
  rc.train.rho = cfg.get_double("rho");
  rc.train.chi = cfg.get_double("chi");
  rc.train.omega = cfg.get_double("omega");
  rc.train.epochs = static_cast<std::size_t>(cfg.get_int("epochs"));
  rc.train.batch_size = static_cast<std::size_t>(cfg.get_int("batch_size"));
  rc.train.lr0 = cfg.get_double("lr0");
  rc.train.weight_decay = cfg.get_double("weight_decay");
  rc.train.seed = static_cast<std::uint64_t>(cfg.get_int("seed"));

  const std::string regime = cfg.get_string("perturb");
  if (regime == "natural") rc.train.regime = PerturbRegime::Natural;
  else if (regime == "gaussian") rc.train.regime = PerturbRegime::Gaussian;
  else if (regime == "at") rc.train.regime = PerturbRegime::At;
  else throw DataError("config: perturb must be natural|gaussian|at, got '" + regime + "'");

  for (std::int64_t s : cfg.get_int_list("layers")) {
    if (s < 1) throw DataError("config: layer sizes must be positive");
    rc.layer_sizes.push_back(static_cast<std::size_t>(s));
  }
  if (rc.layer_sizes.size() < 2) throw DataError("config: layers needs at least input,hidden");
  rc.classes = static_cast<std::size_t>(cfg.get_int("classes"));

  const std::string neuron = cfg.get_string("neuron");
  NeuronKind kind;
  if (neuron == "lif") kind = NeuronKind::Lif;
  else if (neuron == "dlif") kind = NeuronKind::Dlif;
  else throw DataError("config: neuron must be lif|dlif, got '" + neuron + "'");
  rc.kinds.assign(rc.layer_sizes.size() - 1, kind);

  rc.train_data = parse_dataset(cfg, "train");
  rc.eval_data = parse_dataset(cfg, "eval");

  rc.eval_every = static_cast<std::size_t>(cfg.get_int_or("eval_every", 1));
  rc.eval_epsilon = cfg.get_double_or("eval_epsilon_over_255", 8.0) / 255.0;
  rc.eval_step = cfg.has("eval_pgd_step_over_255")
                     ? cfg.get_double("eval_pgd_step_over_255") / 255.0
                     : rc.eval_epsilon / 4.0;
  rc.eval_pgd_iters = static_cast<std::size_t>(cfg.get_int_or("eval_pgd_iters", 10));
  rc.checkpoint_every = static_cast<std::size_t>(cfg.get_int_or("checkpoint_every", 0));

  rc.train.validate();
  rc.lif.validate();
  return rc;
}

NetworkDef build_network(const RunConfig& cfg) {
  NetworkDef net;
  net.layer_sizes = cfg.layer_sizes;
  net.kinds = cfg.kinds;
  net.steps = cfg.steps;
  net.lif = cfg.lif;
  const std::size_t L = cfg.layer_sizes.size() - 1;
  const Rng init_rng = Rng(cfg.train.seed).derive(0xA11CE);
  for (std::size_t l = 0; l < L; ++l) {
    const std::size_t fan_in = cfg.layer_sizes[l];
    Rng layer_rng = init_rng.derive(l);
    net.weights.push_back(Matrix::random_gaussian(
        cfg.layer_sizes[l + 1], fan_in, std::sqrt(2.0 / static_cast<double>(fan_in)), layer_rng));
    net.dlif_a.emplace_back();
    if (cfg.kinds[l] == NeuronKind::Dlif) net.dlif_a[l].assign(cfg.steps, 1.0);
  }
  Rng ro_rng = init_rng.derive(L);
  net.readout = Matrix::random_gaussian(
      cfg.classes, cfg.layer_sizes.back(),
      std::sqrt(1.0 / static_cast<double>(cfg.layer_sizes.back())), ro_rng);
  net.validate();
  return net;
}

Checkpoint make_checkpoint(const NetworkDef& net, const RunConfig& cfg, std::uint64_t epoch,
                           std::uint64_t rng_state) {
  Checkpoint ck;
  ck.epoch = epoch;
  ck.rng_seed = cfg.train.seed;
  ck.rng_state = rng_state;
  ck.net = net;
  ck.config_echo = cfg.config_echo;
  return ck;
}

TrainOutcome train_model(const RunConfig& cfg, const Checkpoint* resume) {
  return run_loop(cfg, resume, nullptr);
}

TrainOutcome run_training(const RunConfig& cfg, const std::string& out_dir,
                          const Checkpoint* resume) {
  std::filesystem::create_directories(out_dir);

  CsvWriter csv;
  csv.metadata(run_metadata(cfg.train.seed, cfg.lif.lambda, cfg.lif.u_th, cfg.steps,
                            cfg.train.rho, cfg.train.chi, cfg.train.omega));
  csv.header({"epoch", "task_loss", "msmppd", "clean_acc", "pgd_acc"});

  const EpochSink sink = [&](const EpochRecord& rec, const NetworkDef& net,
                             std::uint64_t rng_state) {
    csv.row({static_cast<double>(rec.epoch), rec.task_loss, rec.msmppd, rec.clean_acc,
             rec.pgd_acc});
    const bool last = rec.epoch == cfg.train.epochs;
    if (cfg.checkpoint_every > 0 && rec.epoch % cfg.checkpoint_every == 0 && !last) {
      save_checkpoint(make_checkpoint(net, cfg, rec.epoch, rng_state),
                      out_dir + "/ckpt_epoch" + std::to_string(rec.epoch) + ".bin");
    }
  };

  TrainOutcome out = run_loop(cfg, resume, sink);
  save_checkpoint(make_checkpoint(out.net, cfg, cfg.train.epochs, out.rng_state_final),
                  out_dir + "/ckpt_final.bin");
  csv.commit(out_dir + "/metrics.csv");
  return out;
}

}  // namespace snnlab
