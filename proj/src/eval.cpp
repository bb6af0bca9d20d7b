#include "snnlab/eval.hpp"

#include <vector>

namespace snnlab {

namespace {

double fraction_correct(const std::vector<char>& hits) {
  std::size_t n = 0;
  for (char h : hits) n += h ? 1 : 0;
  return hits.empty() ? 0.0 : static_cast<double>(n) / static_cast<double>(hits.size());
}

}  // namespace

double clean_accuracy(const NetworkDef& net, const Dataset& data) {
  std::vector<char> hits(data.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < data.size(); ++i) {
    const ForwardTrace t = forward(net, data.sample(i));
    hits[i] = argmax_class(t.logits) == static_cast<std::size_t>(data.labels[i]);
  }
  return fraction_correct(hits);
}

double attacked_accuracy(const NetworkDef& net, const Dataset& data, const AttackConfig& cfg,
                         std::uint64_t seed, double omega) {
  cfg.validate();
  const InputGradFn grad_fn = make_ce_input_grad(net, omega);
  std::vector<char> hits(data.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto x = data.sample(i);
    const int y = data.labels[i];
    Rng rng = Rng(seed).derive(i);
    std::vector<double> adv;
    switch (cfg.kind) {
      case AttackKind::Fgsm:
        adv = fgsm(net, x, y, cfg.epsilon, grad_fn);
        break;
      case AttackKind::Pgd:
        adv = pgd(net, x, y, cfg, grad_fn, rng);
        break;
      case AttackKind::Rfgsm:
        adv = rfgsm(net, x, y, rng, omega);
        break;
      case AttackKind::Gaussian:
        adv = gaussian_perturb(x, cfg.epsilon, rng);
        break;
    }
    const ForwardTrace t = forward(net, adv);
    hits[i] = argmax_class(t.logits) == static_cast<std::size_t>(y);
  }
  return fraction_correct(hits);
}

double gaussian_accuracy(const NetworkDef& net, const Dataset& data, double sigma,
                         std::uint64_t seed) {
  AttackConfig cfg;
  cfg.kind = AttackKind::Gaussian;
  cfg.epsilon = sigma;
  return attacked_accuracy(net, data, cfg, seed);
}

}  // namespace snnlab
