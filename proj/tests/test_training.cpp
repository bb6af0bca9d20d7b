#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "snnlab/perturbation.hpp"
#include "snnlab/surrogate.hpp"
#include "snnlab/trainer.hpp"
#include "snnlab/training.hpp"

using namespace snnlab;

namespace {

NetworkDef make_net(Rng& rng, std::vector<std::size_t> sizes, std::size_t classes,
                    std::size_t steps, NeuronKind kind) {
  NetworkDef net;
  net.layer_sizes = sizes;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    net.weights.push_back(Matrix::random_gaussian(sizes[l + 1], sizes[l], 0.8, rng));
    net.kinds.push_back(kind);
    net.dlif_a.emplace_back();
    if (kind == NeuronKind::Dlif) {
      net.dlif_a.back().assign(steps, 1.0);
      for (auto& a : net.dlif_a.back()) a = 0.8 + 0.4 * rng.uniform01();
    }
  }
  net.steps = steps;
  net.lif = {0.9, 1.0};
  net.readout = Matrix::random_gaussian(classes, sizes.back(), 0.7, rng);
  net.validate();
  return net;
}

// Loss of the full pipeline on the relaxed forward: mixup task CE plus
// rho * ms_mppd of the layer-L current difference.
double relaxed_loss(const NetworkDef& net, std::span<const double> x,
                    std::span<const double> x_tilde, int y, double chi, double rho,
                    double omega) {
  const auto [tc, tp] = forward_pair(net, x, x_tilde, SpikeMode::Relaxed, omega);
  const Signal drive = input_current_difference(tc, tp, net.num_layers());
  return total_loss(task_loss(tc.logits, tp.logits, y, chi),
                    ms_mppd(drive, net.lif.lambda), rho);
}

GradientSet analytic_grads(const NetworkDef& net, std::span<const double> x,
                           std::span<const double> x_tilde, int y, double chi, double rho,
                           double omega) {
  const auto [tc, tp] = forward_pair(net, x, x_tilde, SpikeMode::Relaxed, omega);
  const Signal drive = input_current_difference(tc, tp, net.num_layers());

  std::vector<double> gc = softmax_cross_entropy_grad(tc.logits, y);
  for (auto& v : gc) v *= chi;
  std::vector<double> gp = softmax_cross_entropy_grad(tp.logits, y);
  for (auto& v : gp) v *= 1.0 - chi;

  Signal extra = ms_mppd_drive_grad(drive, net.lif.lambda);
  for (auto& v : extra.data) v *= rho;
  GradientSet g = backward(net, tc, gc, omega, &extra);
  for (auto& v : extra.data) v = -v;
  g.add(backward(net, tp, gp, omega, &extra));
  return g;
}

struct FdCheck {
  double max_rel = 0.0;
  std::size_t checked = 0;
};

void fd_compare(double fd, double an, FdCheck& acc) {
  const double scale = std::max({1e-6, std::abs(fd), std::abs(an)});
  acc.max_rel = std::max(acc.max_rel, std::abs(fd - an) / scale);
  ++acc.checked;
}

}  // namespace

TEST_CASE("surrogate triangle values") {
  CHECK(surrogate_grad(1.0, 1.0, 1.0) == 1.0);
  CHECK(surrogate_grad(1.5, 1.0, 1.0) == 0.5);
  CHECK(surrogate_grad(0.5, 1.0, 1.0) == 0.5);
  CHECK(surrogate_grad(2.0, 1.0, 1.0) == 0.0);
  CHECK(surrogate_grad(-0.5, 1.0, 1.0) == 0.0);
  // Peak 1/omega, support (u_th - omega, u_th + omega).
  CHECK(surrogate_grad(1.0, 1.0, 0.5) == 2.0);
  CHECK(surrogate_grad(1.49, 1.0, 0.5) > 0.0);
  CHECK(surrogate_grad(1.51, 1.0, 0.5) == 0.0);
}

TEST_CASE("relaxed spike is the integral of the surrogate") {
  CHECK(relaxed_spike(-5.0, 1.0, 1.0) == 0.0);
  CHECK(relaxed_spike(5.0, 1.0, 1.0) == 1.0);
  CHECK(relaxed_spike(1.0, 1.0, 1.0) == 0.5);
  // Central difference of the ramp reproduces the triangle.
  for (double v : {0.3, 0.7, 1.0, 1.2, 1.9}) {
    const double h = 1e-6;
    const double fd = (relaxed_spike(v + h, 1.0, 1.0) - relaxed_spike(v - h, 1.0, 1.0)) / (2 * h);
    CHECK(fd == doctest::Approx(surrogate_grad(v, 1.0, 1.0)).epsilon(1e-6));
  }
}

TEST_CASE("task and total loss boundaries") {
  const std::vector<double> zc{1.0, -0.5, 0.2};
  const std::vector<double> zp{0.3, 0.9, -1.1};
  CHECK(task_loss(zc, zp, 1, 1.0) == doctest::Approx(softmax_cross_entropy(zc, 1)).epsilon(1e-15));
  CHECK(task_loss(zc, zp, 1, 0.0) == doctest::Approx(softmax_cross_entropy(zp, 1)).epsilon(1e-15));
  for (double chi : {0.0, 0.25, 0.5, 1.0}) {
    CHECK(task_loss(zc, zc, 2, chi) ==
          doctest::Approx(softmax_cross_entropy(zc, 2)).epsilon(1e-15));
  }
  CHECK(total_loss(0.7, 0.12, 1.0) == doctest::Approx(0.82).epsilon(1e-15));
  CHECK(total_loss(0.7, 0.12, 0.0) == 0.7);
  CHECK(total_loss(0.0, 0.12, 2.0) == doctest::Approx(2.0 * 0.12).epsilon(1e-15));
}

TEST_CASE("cosine schedule endpoints and midpoint") {
  CHECK(cosine_lr(0, 100, 0.1) == 0.1);
  CHECK(cosine_lr(100, 100, 0.1) == 0.0);
  CHECK(cosine_lr(50, 100, 0.1) == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("zero upstream gradient gives a zero gradient set") {
  Rng rng(20);
  const NetworkDef net = make_net(rng, {4, 6, 3}, 3, 5, NeuronKind::Dlif);
  std::vector<double> x(4);
  for (auto& v : x) v = rng.uniform01();
  const ForwardTrace t = forward(net, x);
  const GradientSet g = backward(net, t, std::vector<double>{0, 0, 0}, 1.0);
  for (const auto& w : g.weights)
    for (double v : w.data) CHECK(v == 0.0);
  for (const auto& a : g.dlif_a)
    for (double v : a) CHECK(v == 0.0);
  for (double v : g.readout.data) CHECK(v == 0.0);
  for (double v : g.input) CHECK(v == 0.0);
}

TEST_CASE("dlif with a frozen at 1 gives bitwise lif weight gradients") {
  Rng rng(21);
  NetworkDef lif_net = make_net(rng, {4, 7, 3}, 3, 6, NeuronKind::Lif);
  NetworkDef dlif_net = lif_net;
  dlif_net.kinds.assign(2, NeuronKind::Dlif);
  dlif_net.dlif_a = {std::vector<double>(6, 1.0), std::vector<double>(6, 1.0)};
  dlif_net.validate();

  std::vector<double> x(4);
  for (auto& v : x) v = rng.uniform01();
  const ForwardTrace ta = forward(lif_net, x);
  const ForwardTrace tb = forward(dlif_net, x);
  for (std::size_t l = 0; l < 2; ++l) CHECK(ta.layers[l].v.data == tb.layers[l].v.data);

  const std::vector<double> dl{0.3, -0.2, 0.5};
  const GradientSet ga = backward(lif_net, ta, dl, 1.0);
  const GradientSet gb = backward(dlif_net, tb, dl, 1.0);
  for (std::size_t l = 0; l < 2; ++l) CHECK(ga.weights[l].data == gb.weights[l].data);
  CHECK(ga.readout.data == gb.readout.data);
  CHECK(ga.input == gb.input);
}

TEST_CASE("relaxed-mode gradients match central finite differences") {
  Rng rng(22);
  NetworkDef net = make_net(rng, {4, 6, 3}, 3, 5, NeuronKind::Dlif);
  std::vector<double> x(4), x_tilde(4);
  for (auto& v : x) v = rng.uniform01();
  for (std::size_t i = 0; i < 4; ++i) {
    x_tilde[i] = std::clamp(x[i] + (i % 2 ? 0.02 : -0.015), 0.0, 1.0);
  }
  const int y = 1;
  const double chi = 0.5, omega = 1.0;
  const double h = 1e-5;

  for (double rho : {0.0, 1.0}) {
    const GradientSet g = analytic_grads(net, x, x_tilde, y, chi, rho, omega);
    FdCheck acc;

    const auto probe = [&](double* slot, double analytic) {
      const double saved = *slot;
      *slot = saved + h;
      const double up = relaxed_loss(net, x, x_tilde, y, chi, rho, omega);
      *slot = saved - h;
      const double dn = relaxed_loss(net, x, x_tilde, y, chi, rho, omega);
      *slot = saved;
      fd_compare((up - dn) / (2 * h), analytic, acc);
    };

    for (std::size_t l = 0; l < net.num_layers(); ++l) {
      for (std::size_t k = 0; k < net.weights[l].data.size(); ++k) {
        probe(&net.weights[l].data[k], g.weights[l].data[k]);
      }
      for (std::size_t k = 0; k < net.dlif_a[l].size(); ++k) {
        probe(&net.dlif_a[l][k], g.dlif_a[l][k]);
      }
    }
    for (std::size_t k = 0; k < net.readout.data.size(); ++k) {
      probe(&net.readout.data[k], g.readout.data[k]);
    }

    CHECK(acc.checked > 50);
    CHECK(acc.max_rel <= 1e-4);
  }
}

TEST_CASE("relaxed-mode input gradients match finite differences") {
  Rng rng(23);
  const NetworkDef net = make_net(rng, {5, 7, 4}, 4, 4, NeuronKind::Lif);
  std::vector<double> x(5);
  for (auto& v : x) v = 0.2 + 0.6 * rng.uniform01();
  const int y = 2;
  const double h = 1e-5;

  const ForwardTrace t = forward(net, x, SpikeMode::Relaxed, 1.0);
  const auto dlogits = softmax_cross_entropy_grad(t.logits, y);
  const GradientSet g = backward(net, t, dlogits, 1.0);

  FdCheck acc;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<double> xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    const double up = softmax_cross_entropy(forward(net, xp, SpikeMode::Relaxed, 1.0).logits, y);
    const double dn = softmax_cross_entropy(forward(net, xm, SpikeMode::Relaxed, 1.0).logits, y);
    fd_compare((up - dn) / (2 * h), g.input[i], acc);
  }
  CHECK(acc.max_rel <= 1e-4);
}

TEST_CASE("natural regime: ms-mppd is exactly zero and training runs") {
  RunConfig rc;
  rc.train.rho = 0.5;  // must not matter: the drive is identically zero
  rc.train.chi = 0.5;
  rc.train.omega = 1.0;
  rc.train.epochs = 2;
  rc.train.batch_size = 16;
  rc.train.lr0 = 0.1;
  rc.train.weight_decay = 0.0005;
  rc.train.regime = PerturbRegime::Natural;
  rc.train.seed = 3;
  rc.layer_sizes = {2, 8, 2};
  rc.kinds = {NeuronKind::Lif, NeuronKind::Lif};
  rc.steps = 6;
  rc.lif = {0.99, 1.0};
  rc.classes = 2;
  rc.train_data.kind = DatasetKind::Blobs;
  rc.train_data.blobs_classes = 2;
  rc.train_data.blobs_per_class = 32;
  rc.train_data.blobs_centers = {{0.25, 0.25}, {0.75, 0.75}};
  rc.train_data.blobs_noise_std = 0.05;
  rc.train_data.blobs_seed = 5;
  rc.eval_data = rc.train_data;
  rc.eval_data.blobs_seed = 6;
  rc.eval_every = 0;

  NetworkDef net = build_network(rc);
  Rng rng(rc.train.seed);
  const Dataset data = make_blobs(rc.train_data);
  const EpochStats stats = train_epoch(net, data, rc.train, rng, 0, rc.train.epochs);
  CHECK(stats.msmppd == 0.0);
  CHECK(stats.task_loss > 0.0);
}

TEST_CASE("training determinism: identical seeds give identical parameters") {
  RunConfig rc;
  rc.train.rho = 1.0;
  rc.train.chi = 0.5;
  rc.train.omega = 1.0;
  rc.train.epochs = 3;
  rc.train.batch_size = 8;
  rc.train.lr0 = 0.1;
  rc.train.weight_decay = 0.0005;
  rc.train.regime = PerturbRegime::At;
  rc.train.seed = 11;
  rc.layer_sizes = {2, 6, 2};
  rc.kinds = {NeuronKind::Dlif, NeuronKind::Dlif};
  rc.steps = 5;
  rc.lif = {0.99, 1.0};
  rc.classes = 2;
  rc.train_data.kind = DatasetKind::Blobs;
  rc.train_data.blobs_classes = 2;
  rc.train_data.blobs_per_class = 24;
  rc.train_data.blobs_centers = {{0.3, 0.4}, {0.7, 0.6}};
  rc.train_data.blobs_noise_std = 0.08;
  rc.train_data.blobs_seed = 7;
  rc.eval_data = rc.train_data;
  rc.eval_data.blobs_seed = 8;
  rc.eval_every = 0;

  const TrainOutcome a = train_model(rc);
  const TrainOutcome b = train_model(rc);
  for (std::size_t l = 0; l < a.net.num_layers(); ++l) {
    CHECK(a.net.weights[l].data == b.net.weights[l].data);
    CHECK(a.net.dlif_a[l] == b.net.dlif_a[l]);
  }
  CHECK(a.net.readout.data == b.net.readout.data);
  CHECK(a.rng_state_final == b.rng_state_final);
}

TEST_CASE("natural training drives the loss down on separable blobs") {
  RunConfig rc;
  rc.train.rho = 0.0;
  rc.train.chi = 0.5;
  rc.train.omega = 1.0;
  rc.train.epochs = 30;
  rc.train.batch_size = 8;
  rc.train.lr0 = 0.3;
  rc.train.weight_decay = 0.0005;
  rc.train.regime = PerturbRegime::Natural;
  rc.train.seed = 0;
  rc.layer_sizes = {2, 16, 2};
  rc.kinds = {NeuronKind::Lif, NeuronKind::Lif};
  rc.steps = 8;
  rc.lif = {0.99, 1.0};
  rc.classes = 2;
  rc.train_data.kind = DatasetKind::Blobs;
  rc.train_data.blobs_classes = 2;
  rc.train_data.blobs_per_class = 100;
  rc.train_data.blobs_centers = {{0.25, 0.25}, {0.75, 0.75}};
  rc.train_data.blobs_noise_std = 0.06;
  rc.train_data.blobs_seed = 1;
  rc.eval_data = rc.train_data;
  rc.eval_data.blobs_seed = 2;
  rc.eval_every = 0;

  // Baseline: plain CE of the untrained network over the training set.
  const Dataset data = make_blobs(rc.train_data);
  const NetworkDef fresh = build_network(rc);
  double initial = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const ForwardTrace t = forward(fresh, data.sample(i));
    initial += softmax_cross_entropy(t.logits, data.labels[i]);
  }
  initial /= static_cast<double>(data.size());

  const TrainOutcome out = train_model(rc);
  const double final_loss = out.history.back().task_loss;
  CHECK(final_loss < 0.1 * initial);
  CHECK(out.history.back().train_acc > 0.95);
}
