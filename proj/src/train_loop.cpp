#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "snnlab/attacks.hpp"
#include "snnlab/errors.hpp"
#include "snnlab/network.hpp"
#include "snnlab/perturbation.hpp"
#include "snnlab/training.hpp"

namespace snnlab {

namespace {

constexpr double kGaussianTrainSigma = 8.0 / 255.0;

// Stateless per-sample stream: a pure function of (seed, epoch, batch,
// sample), so batch workers never contend and a resumed run replays the
// same noise.
Rng sample_stream(std::uint64_t seed, std::size_t epoch, std::size_t batch, std::size_t sample) {
  return Rng(seed).derive(epoch).derive(batch).derive(sample);
}

struct SampleResult {
  GradientSet grads;
  double task = 0.0;
  double ms = 0.0;
  bool correct = false;
};

}  // namespace

EpochStats train_epoch(NetworkDef& net, const Dataset& data, const TrainConfig& cfg, Rng& rng,
                       std::size_t epoch_index, std::size_t total_epochs) {
  cfg.validate();
  net.validate();
  if (data.size() == 0) throw std::invalid_argument("train_epoch: empty dataset");

  const std::size_t n = data.size();
  const std::size_t L = net.num_layers();
  const double lambda = net.lif.lambda;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n; i-- > 1;) {
    const std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i)));
    std::swap(order[i], order[j]);
  }

  const std::size_t num_batches = (n + cfg.batch_size - 1) / cfg.batch_size;
  const std::size_t total_steps = total_epochs * num_batches;

  double task_sum = 0.0;
  double ms_sum = 0.0;
  std::size_t correct = 0;
  double lr = cfg.lr0;

  for (std::size_t b = 0; b < num_batches; ++b) {
    const std::size_t begin = b * cfg.batch_size;
    const std::size_t end = std::min(begin + cfg.batch_size, n);
    const std::size_t bs = end - begin;

    std::vector<SampleResult> results(bs);

#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < bs; ++k) {
      const std::size_t idx = order[begin + k];
      const auto x = data.sample(idx);
      const int y = data.labels[idx];
      Rng srng = sample_stream(cfg.seed, epoch_index, b, k);

      std::vector<double> x_tilde;
      switch (cfg.regime) {
        case PerturbRegime::Natural:
          x_tilde.assign(x.begin(), x.end());
          break;
        case PerturbRegime::Gaussian:
          x_tilde = gaussian_perturb(x, kGaussianTrainSigma, srng);
          break;
        case PerturbRegime::At:
          x_tilde = rfgsm(net, x, y, srng, cfg.omega);
          break;
      }

      const auto [trace_clean, trace_pert] = forward_pair(net, x, x_tilde);
      const Signal drive = input_current_difference(trace_clean, trace_pert, L);
      const double ms = ms_mppd(drive, lambda);

      std::vector<double> g_clean = softmax_cross_entropy_grad(trace_clean.logits, y);
      for (auto& v : g_clean) v *= cfg.chi;
      std::vector<double> g_pert = softmax_cross_entropy_grad(trace_pert.logits, y);
      for (auto& v : g_pert) v *= 1.0 - cfg.chi;

      SampleResult& r = results[k];
      if (cfg.rho > 0.0) {
        Signal extra = ms_mppd_drive_grad(drive, lambda);
        for (auto& v : extra.data) v *= cfg.rho;
        r.grads = backward(net, trace_clean, g_clean, cfg.omega, &extra);
        for (auto& v : extra.data) v = -v;
        r.grads.add(backward(net, trace_pert, g_pert, cfg.omega, &extra));
      } else {
        r.grads = backward(net, trace_clean, g_clean, cfg.omega);
        r.grads.add(backward(net, trace_pert, g_pert, cfg.omega));
      }
      r.task = task_loss(trace_clean.logits, trace_pert.logits, y, cfg.chi);
      r.ms = ms;
      r.correct = argmax_class(trace_clean.logits) == static_cast<std::size_t>(y);
    }

    // Deterministic reduction: samples summed in batch order, independent of
    // the thread count that produced them.
    GradientSet batch_grads = std::move(results[0].grads);
    double batch_task = results[0].task;
    double batch_ms = results[0].ms;
    correct += results[0].correct ? 1 : 0;
    for (std::size_t k = 1; k < bs; ++k) {
      batch_grads.add(results[k].grads);
      batch_task += results[k].task;
      batch_ms += results[k].ms;
      correct += results[k].correct ? 1 : 0;
    }
    batch_grads.scale(1.0 / static_cast<double>(bs));
    task_sum += batch_task;
    ms_sum += batch_ms;

    const double batch_loss =
        total_loss(batch_task / static_cast<double>(bs), batch_ms / static_cast<double>(bs),
                   cfg.rho);
    if (!std::isfinite(batch_loss)) {
      throw NumericError("train_epoch: non-finite loss at epoch " + std::to_string(epoch_index) +
                         ", batch " + std::to_string(b) + " (task " +
                         std::to_string(batch_task / static_cast<double>(bs)) + ", ms-mppd " +
                         std::to_string(batch_ms / static_cast<double>(bs)) + ")");
    }

    lr = cosine_lr(epoch_index * num_batches + b, total_steps, cfg.lr0);
    sgd_step(net, batch_grads, lr, cfg.weight_decay);
  }

  EpochStats stats;
  stats.task_loss = task_sum / static_cast<double>(n);
  stats.msmppd = ms_sum / static_cast<double>(n);
  stats.train_accuracy = static_cast<double>(correct) / static_cast<double>(n);
  stats.lr_last = lr;
  return stats;
}

}  // namespace snnlab
