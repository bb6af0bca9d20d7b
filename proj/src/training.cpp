#include "snnlab/training.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "snnlab/kernels.hpp"
#include "snnlab/numerics.hpp"
#include "snnlab/perturbation.hpp"

namespace snnlab {

void TrainConfig::validate() const {
  if (!(chi >= 0.0 && chi <= 1.0)) throw std::invalid_argument("TrainConfig: chi must be in [0,1]");
  if (!(omega > 0.0)) throw std::invalid_argument("TrainConfig: omega must be positive");
  if (rho < 0.0) throw std::invalid_argument("TrainConfig: rho must be >= 0");
  if (batch_size < 1 || epochs < 1) {
    throw std::invalid_argument("TrainConfig: epochs and batch_size must be >= 1");
  }
}

GradientSet GradientSet::zeros_like(const NetworkDef& net) {
  GradientSet g;
  g.weights.reserve(net.num_layers());
  g.dlif_a.resize(net.num_layers());
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    g.weights.emplace_back(net.weights[l].rows, net.weights[l].cols);
    if (net.kinds[l] == NeuronKind::Dlif) g.dlif_a[l].assign(net.steps, 0.0);
  }
  g.readout = Matrix(net.readout.rows, net.readout.cols);
  g.input.assign(net.input_dim(), 0.0);
  return g;
}

void GradientSet::add(const GradientSet& other) {
  for (std::size_t l = 0; l < weights.size(); ++l) {
    for (std::size_t k = 0; k < weights[l].data.size(); ++k)
      weights[l].data[k] += other.weights[l].data[k];
    for (std::size_t k = 0; k < dlif_a[l].size(); ++k) dlif_a[l][k] += other.dlif_a[l][k];
  }
  for (std::size_t k = 0; k < readout.data.size(); ++k) readout.data[k] += other.readout.data[k];
  for (std::size_t k = 0; k < input.size(); ++k) input[k] += other.input[k];
}

void GradientSet::scale(double factor) {
  for (auto& w : weights)
    for (auto& v : w.data) v *= factor;
  for (auto& a : dlif_a)
    for (auto& v : a) v *= factor;
  for (auto& v : readout.data) v *= factor;
  for (auto& v : input) v *= factor;
}

double softmax_cross_entropy(std::span<const double> logits, int label) {
  const double top = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double z : logits) sum += std::exp(z - top);
  return top + std::log(sum) - logits[static_cast<std::size_t>(label)];
}

std::vector<double> softmax_cross_entropy_grad(std::span<const double> logits, int label) {
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - top);
    sum += p[i];
  }
  for (auto& v : p) v /= sum;
  p[static_cast<std::size_t>(label)] -= 1.0;
  return p;
}

double task_loss(std::span<const double> logits_clean, std::span<const double> logits_perturbed,
                 int label, double chi) {
  if (!(chi >= 0.0 && chi <= 1.0)) throw std::invalid_argument("task_loss: chi must be in [0,1]");
  return chi * softmax_cross_entropy(logits_clean, label) +
         (1.0 - chi) * softmax_cross_entropy(logits_perturbed, label);
}

double total_loss(double task, double msmppd, double rho) {
  if (rho < 0.0) throw std::invalid_argument("total_loss: rho must be >= 0");
  return task + rho * msmppd;
}

double cosine_lr(std::size_t step, std::size_t total_steps, double lr0) {
  const double x = static_cast<double>(step) / static_cast<double>(total_steps);
  return lr0 * (1.0 + std::cos(3.141592653589793238462643383279502884 * x)) / 2.0;
}

GradientSet backward(const NetworkDef& net, const ForwardTrace& trace,
                     std::span<const double> loss_grad_at_logits, double omega,
                     const Signal* extra_last_layer_current_grad) {
  const std::size_t L = net.num_layers();
  const std::size_t T = net.steps;
  if (trace.layers.size() != L || trace.input.size() != net.input_dim() ||
      loss_grad_at_logits.size() != net.num_classes()) {
    throw std::invalid_argument("backward: trace does not match network");
  }
  if (extra_last_layer_current_grad &&
      (extra_last_layer_current_grad->steps != T ||
       extra_last_layer_current_grad->dim != net.layer_sizes.back())) {
    throw std::invalid_argument("backward: extra current gradient has wrong shape");
  }

  GradientSet grads = GradientSet::zeros_like(net);

  // Readout head: logits = R * rate, rate = sum_t s^L[t] / T.
  kernels::add_outer(grads.readout, loss_grad_at_logits, trace.rate);
  const std::vector<double> rate_grad = kernels::matvec_transpose(net.readout, loss_grad_at_logits);

  // Gradient arriving at each layer's spikes from above, all steps at once.
  Signal spike_grad(T, net.layer_sizes.back());
  for (std::size_t t = 0; t < T; ++t) {
    auto dst = spike_grad.step(t);
    for (std::size_t i = 0; i < dst.size(); ++i)
      dst[i] = rate_grad[i] / static_cast<double>(T);
  }

  for (std::size_t l = L; l-- > 0;) {
    const LayerTrace& lt = trace.layers[l];
    const std::size_t n = net.layer_sizes[l + 1];
    const bool is_last = (l + 1 == L);
    const bool is_dlif = net.kinds[l] == NeuronKind::Dlif;

    // Total dL/d(input current) per step; consumed by the weight gradient
    // and by the layer below.
    Signal current_grad(T, n);
    std::vector<double> carry_u(n, 0.0);  // dL/du^l[t] flowing backward in time

    for (std::size_t t = T; t-- > 0;) {
      const double leak = net.effective_leak(l, t + 1);
      const auto v = lt.v.step(t);
      const auto s = lt.s.step(t);
      auto cg = current_grad.step(t);
      const auto sg = spike_grad.step(t);

      double a_accum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        // u = v*(1-s): the reset path contributes -v through s and (1-s)
        // through v.
        const double gs = sg[i] - carry_u[i] * v[i];
        const double gv = gs * surrogate_grad(v[i], net.lif.u_th, omega) +
                          carry_u[i] * (1.0 - s[i]);
        double total = gv;
        if (is_last && extra_last_layer_current_grad) {
          total += extra_last_layer_current_grad->at(t, i);
        }
        cg[i] = total;
        if (t > 0) {
          const double u_prev = lt.u.at(t - 1, i);
          a_accum += u_prev * gv;
          carry_u[i] = leak * gv;
        }
      }
      if (is_dlif && t > 0) grads.dlif_a[l][t] = net.lif.lambda * a_accum;
      // t == 0 reads u[0] = 0, so both the carry and the a-gradient vanish.
      if (t == 0 && is_dlif) grads.dlif_a[l][0] = 0.0;
    }

    // Parameter and downstream gradients from the total current gradient.
    if (l == 0) {
      std::vector<double> summed(n, 0.0);
      for (std::size_t t = 0; t < T; ++t) {
        const auto cg = current_grad.step(t);
        for (std::size_t i = 0; i < n; ++i) summed[i] += cg[i];
      }
      kernels::add_outer(grads.weights[0], summed, trace.input);
      kernels::matvec_transpose(net.weights[0], summed, grads.input);
    } else {
      const Signal& below_s = trace.layers[l - 1].s;
      Signal next_spike_grad(T, net.layer_sizes[l]);
      for (std::size_t t = 0; t < T; ++t) {
        kernels::add_outer(grads.weights[l], current_grad.step(t), below_s.step(t));
        kernels::matvec_transpose(net.weights[l], current_grad.step(t), next_spike_grad.step(t));
      }
      spike_grad = std::move(next_spike_grad);
    }
  }
  return grads;
}

Signal ms_mppd_drive_grad(const Signal& drive, double lambda) {
  const PerturbationTrace p = mppd_simplified(drive, lambda);
  Signal g(drive.steps, drive.dim);
  std::vector<double> carry(drive.dim, 0.0);
  for (std::size_t t = drive.steps; t-- > 0;) {
    const auto e = p.eps.step(t);
    auto gt = g.step(t);
    for (std::size_t i = 0; i < drive.dim; ++i) {
      carry[i] = 2.0 * e[i] + lambda * carry[i];
      gt[i] = carry[i];
    }
  }
  return g;
}

void sgd_step(NetworkDef& net, const GradientSet& grads, double lr, double weight_decay) {
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    auto& w = net.weights[l].data;
    const auto& g = grads.weights[l].data;
    for (std::size_t k = 0; k < w.size(); ++k) w[k] -= lr * (g[k] + weight_decay * w[k]);
    if (net.kinds[l] == NeuronKind::Dlif) {
      for (std::size_t k = 0; k < net.dlif_a[l].size(); ++k)
        net.dlif_a[l][k] -= lr * grads.dlif_a[l][k];
    }
  }
  auto& r = net.readout.data;
  for (std::size_t k = 0; k < r.size(); ++k)
    r[k] -= lr * (grads.readout.data[k] + weight_decay * r[k]);
}

}  // namespace snnlab
