#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "snnlab/kernels.hpp"
#include "snnlab/network.hpp"
#include "snnlab/rng.hpp"

using namespace snnlab;

namespace {

NetworkDef single_neuron_net(std::size_t steps) {
  NetworkDef net;
  net.layer_sizes = {1, 1};
  net.weights = {Matrix(1, 1, {1.0})};
  net.kinds = {NeuronKind::Lif};
  net.dlif_a = {{}};
  net.steps = steps;
  net.lif = {0.99, 1.0};
  net.readout = Matrix(1, 1, {1.0});
  net.validate();
  return net;
}

NetworkDef random_net(Rng& rng, std::vector<std::size_t> sizes, std::size_t classes,
                      std::size_t steps, NeuronKind kind = NeuronKind::Lif) {
  NetworkDef net;
  net.layer_sizes = sizes;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    net.weights.push_back(Matrix::random_gaussian(sizes[l + 1], sizes[l], 0.8, rng));
    net.kinds.push_back(kind);
    net.dlif_a.emplace_back();
    if (kind == NeuronKind::Dlif) net.dlif_a.back().assign(steps, 1.0);
  }
  net.steps = steps;
  net.lif = {0.9, 1.0};
  net.readout = Matrix::random_gaussian(classes, sizes.back(), 0.7, rng);
  net.validate();
  return net;
}

}  // namespace

TEST_CASE("single neuron forward: first spike at t=4, direct coding") {
  // Oracle: iterate the recurrence by hand. 0.3 input with lambda 0.99
  // crosses threshold 1 on step 4.
  const NetworkDef net = single_neuron_net(8);
  const ForwardTrace t = forward(net, std::vector<double>{0.3});
  const Signal& s = t.layers[0].s;
  CHECK(s.at(0, 0) == 0.0);
  CHECK(s.at(1, 0) == 0.0);
  CHECK(s.at(2, 0) == 0.0);
  CHECK(s.at(3, 0) == 1.0);
  // Direct coding: same current at every step.
  for (std::size_t step = 0; step < 8; ++step) {
    CHECK(t.layers[0].input_current.at(step, 0) == doctest::Approx(0.3).epsilon(1e-15));
  }
}

TEST_CASE("zero input: zero spike trains, zero logits") {
  Rng rng(5);
  const NetworkDef net = random_net(rng, {4, 6, 3}, 3, 6);
  const ForwardTrace t = forward(net, std::vector<double>{0, 0, 0, 0});
  for (const auto& layer : t.layers)
    for (double s : layer.s.data) CHECK(s == 0.0);
  for (double z : t.logits) CHECK(z == 0.0);
}

TEST_CASE("forward determinism and forward_pair purity") {
  Rng rng(6);
  const NetworkDef net = random_net(rng, {5, 8, 4}, 2, 7);
  std::vector<double> x(5), xt(5);
  for (auto& v : x) v = rng.uniform01();
  for (std::size_t i = 0; i < 5; ++i) xt[i] = std::min(1.0, x[i] + 8.0 / 255.0);

  const ForwardTrace a = forward(net, x);
  const ForwardTrace b = forward(net, x);
  CHECK(a.logits == b.logits);
  for (std::size_t l = 0; l < a.layers.size(); ++l) {
    CHECK(a.layers[l].v.data == b.layers[l].v.data);
    CHECK(a.layers[l].s.data == b.layers[l].s.data);
  }

  const auto [pc, pp] = forward_pair(net, x, xt);
  const ForwardTrace solo_clean = forward(net, x);
  const ForwardTrace solo_pert = forward(net, xt);
  CHECK(pc.logits == solo_clean.logits);
  CHECK(pp.logits == solo_pert.logits);
  for (std::size_t l = 0; l < pc.layers.size(); ++l) {
    CHECK(pc.layers[l].v.data == solo_clean.layers[l].v.data);
    CHECK(pp.layers[l].v.data == solo_pert.layers[l].v.data);
  }

  const auto [qc, qp] = forward_pair(net, x, x);
  CHECK(qc.logits == qp.logits);
  for (std::size_t l = 0; l < qc.layers.size(); ++l) {
    CHECK(qc.layers[l].v.data == qp.layers[l].v.data);
  }
}

TEST_CASE("trace replay reproduces stored v and s bitwise") {
  Rng rng(7);
  const NetworkDef net = random_net(rng, {6, 9, 5}, 3, 6, NeuronKind::Dlif);
  std::vector<double> x(6);
  for (auto& v : x) v = rng.uniform01();
  const ForwardTrace trace = forward(net, x);

  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    LayerState state(net.layer_sizes[l + 1]);
    for (std::size_t t = 1; t <= net.steps; ++t) {
      // Recompute the input current from the stored upstream spikes.
      std::vector<double> current(net.layer_sizes[l + 1]);
      if (l == 0) {
        kernels::matvec(net.weights[0], x, current);
      } else {
        kernels::matvec(net.weights[l], trace.layers[l - 1].s.step(t - 1), current);
      }
      LayerState next(state.size());
      leaky_fire_step(state, current, net.effective_leak(l, t), net.lif.u_th, next);
      for (std::size_t i = 0; i < next.size(); ++i) {
        CHECK(next.v[i] == trace.layers[l].v.at(t - 1, i));
        CHECK(next.s[i] == trace.layers[l].s.at(t - 1, i));
        CHECK(next.u[i] == trace.layers[l].u.at(t - 1, i));
      }
      state = std::move(next);
    }
  }
}

TEST_CASE("spike count bound and logit linearity in readout") {
  Rng rng(8);
  NetworkDef net = random_net(rng, {4, 10, 6}, 3, 9);
  std::vector<double> x(4);
  for (auto& v : x) v = rng.uniform01();
  const ForwardTrace t = forward(net, x);

  for (std::size_t i = 0; i < 6; ++i) {
    double count = 0;
    for (std::size_t step = 0; step < 9; ++step) count += t.layers[1].s.at(step, i);
    CHECK(count <= 9.0);
    CHECK(t.rate[i] == doctest::Approx(count / 9.0).epsilon(1e-15));
  }

  for (auto& v : net.readout.data) v *= 2.0;
  const ForwardTrace t2 = forward(net, x);
  for (std::size_t k = 0; k < t.logits.size(); ++k) {
    CHECK(t2.logits[k] == 2.0 * t.logits[k]);
  }
}

TEST_CASE("dimension mismatch rejected") {
  Rng rng(9);
  const NetworkDef net = random_net(rng, {4, 5, 3}, 2, 4);
  CHECK_THROWS_AS(forward(net, std::vector<double>{0.1, 0.2}), std::invalid_argument);
}
