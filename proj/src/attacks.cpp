#include "snnlab/attacks.hpp"

#include <algorithm>
#include <stdexcept>

#include "snnlab/training.hpp"

namespace snnlab {

void AttackConfig::validate() const {
  if (epsilon < 0.0) throw std::invalid_argument("AttackConfig: epsilon must be >= 0");
  const bool iterative = kind == AttackKind::Pgd;
  if (iterative && !(step > 0.0)) {
    throw std::invalid_argument("AttackConfig: step must be positive for PGD");
  }
  if (iterative && iters < 1) throw std::invalid_argument("AttackConfig: PGD needs iters >= 1");
}

InputGradFn make_ce_input_grad(const NetworkDef& net, double omega) {
  return [&net, omega](std::span<const double> x, int label) {
    const ForwardTrace trace = forward(net, x);
    const std::vector<double> dlogits = softmax_cross_entropy_grad(trace.logits, label);
    return backward(net, trace, dlogits, omega).input;
  };
}

double sign_or_zero(double g) { return g > 0.0 ? 1.0 : (g < 0.0 ? -1.0 : 0.0); }

namespace {

std::vector<double> clip01(std::vector<double> x) {
  for (auto& v : x) v = std::clamp(v, 0.0, 1.0);
  return x;
}

}  // namespace

std::vector<double> fgsm(const NetworkDef& net, std::span<const double> x, int label,
                         double epsilon, const InputGradFn& grad_fn) {
  (void)net;
  const std::vector<double> g = grad_fn(x, label);
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += epsilon * sign_or_zero(g[i]);
  return clip01(std::move(out));
}

std::vector<double> pgd(const NetworkDef& net, std::span<const double> x, int label,
                        const AttackConfig& cfg, const InputGradFn& grad_fn, Rng& rng) {
  (void)net;
  cfg.validate();
  std::vector<double> lo(x.size()), hi(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    lo[i] = std::max(0.0, x[i] - cfg.epsilon);
    hi[i] = std::min(1.0, x[i] + cfg.epsilon);
  }
  std::vector<double> cur(x.begin(), x.end());
  if (cfg.random_start) {
    for (std::size_t i = 0; i < cur.size(); ++i) {
      cur[i] = std::clamp(cur[i] + rng.uniform(-cfg.epsilon, cfg.epsilon), lo[i], hi[i]);
    }
  }
  for (std::size_t k = 0; k < cfg.iters; ++k) {
    const std::vector<double> g = grad_fn(cur, label);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      cur[i] = std::clamp(cur[i] + cfg.step * sign_or_zero(g[i]), lo[i], hi[i]);
    }
  }
  return cur;
}

std::vector<double> rfgsm(const NetworkDef& net, std::span<const double> x, int label, Rng& rng,
                          double omega) {
  std::vector<double> probe(x.begin(), x.end());
  for (auto& v : probe) v += kRfgsmRandomStep * sign_or_zero(rng.uniform(-1.0, 1.0));
  const std::vector<double> g = make_ce_input_grad(net, omega)(probe, label);
  for (std::size_t i = 0; i < probe.size(); ++i) probe[i] += kRfgsmSignStep * sign_or_zero(g[i]);
  return clip01(std::move(probe));
}

std::vector<double> gaussian_perturb(std::span<const double> x, double sigma, Rng& rng) {
  if (sigma < 0.0) throw std::invalid_argument("gaussian_perturb: sigma must be >= 0");
  std::vector<double> out(x.begin(), x.end());
  for (auto& v : out) v += rng.gaussian(sigma);
  return clip01(std::move(out));
}

}  // namespace snnlab
