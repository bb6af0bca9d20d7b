#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "snnlab/neuron.hpp"
#include "snnlab/rng.hpp"

using namespace snnlab;

TEST_CASE("constant 0.3 input, lambda 0.99: first spike at t=4") {
  const LifParams p{0.99, 1.0};
  LayerState state(1);
  const std::vector<double> input{0.3};
  const double expected_v[] = {0.3, 0.597, 0.89103, 1.1821197};
  for (int t = 0; t < 4; ++t) {
    state = lif_step(state, input, p);
    CHECK(state.v[0] == doctest::Approx(expected_v[t]).epsilon(1e-12));
    if (t < 3) {
      CHECK(state.s[0] == 0.0);
    }
  }
  CHECK(state.s[0] == 1.0);
  CHECK(state.u[0] == 0.0);
}

TEST_CASE("quiescent and super-threshold cases") {
  const LifParams p{0.9, 1.0};
  LayerState rest(2);
  const std::vector<double> zero{0, 0};
  const LayerState still = lif_step(rest, zero, p);
  CHECK(still.v == std::vector<double>{0, 0});
  CHECK(still.s == std::vector<double>{0, 0});
  CHECK(still.u == std::vector<double>{0, 0});

  const std::vector<double> big{2.0, 2.0};
  const LayerState fired = lif_step(rest, big, p);
  CHECK(fired.s == std::vector<double>{1, 1});
  CHECK(fired.u == std::vector<double>{0, 0});
}

TEST_CASE("firing at exactly threshold") {
  const LifParams p{0.5, 1.0};
  LayerState rest(1);
  const LayerState out = lif_step(rest, std::vector<double>{1.0}, p);
  CHECK(out.s[0] == 1.0);
}

TEST_CASE("dlif: a == 1 is bitwise lif; a == 0 forgets history; direct product") {
  const LifParams base{0.9, 1.0};
  DlifParams d{base, {1.0, 1.0, 1.0}};

  Rng rng(4);
  LayerState s_lif(3), s_dlif(3);
  for (std::size_t t = 1; t <= 3; ++t) {
    std::vector<double> input(3);
    for (auto& v : input) v = rng.uniform(-0.5, 1.2);
    s_lif = lif_step(s_lif, input, base);
    s_dlif = dlif_step(s_dlif, input, d, t);
    CHECK(s_lif.v == s_dlif.v);
    CHECK(s_lif.u == s_dlif.u);
    CHECK(s_lif.s == s_dlif.s);
  }

  DlifParams zero_a{base, {0.0}};
  LayerState prev(1);
  prev.u[0] = 123.0;  // any history
  const LayerState out = dlif_step(prev, std::vector<double>{0.5}, zero_a, 1);
  CHECK(out.v[0] == 0.5);

  DlifParams half{base, {1.0, 0.5}};
  LayerState prev2(1);
  prev2.u[0] = 1.0;
  const LayerState out2 = dlif_step(prev2, std::vector<double>{0.0}, half, 2);
  CHECK(out2.v[0] == doctest::Approx(0.45).epsilon(1e-15));

  CHECK_THROWS_AS(dlif_step(prev, std::vector<double>{0.0}, zero_a, 0), std::invalid_argument);
  CHECK_THROWS_AS(dlif_step(prev, std::vector<double>{0.0}, zero_a, 2), std::invalid_argument);
}

TEST_CASE("properties: reset correctness, binary spikes, leak monotonicity") {
  Rng rng(9);
  const LifParams p{0.95, 1.0};
  LayerState state(8);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> input(8);
    for (auto& v : input) v = rng.uniform(-1.0, 1.5);
    state = lif_step(state, input, p);
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(state.u[i] * state.s[i] == 0.0);
      CHECK((state.s[i] == 0.0 || state.s[i] == 1.0));
    }
  }

  // Zero input, no spikes: |v| never grows.
  LayerState decay(1);
  decay.u[0] = 0.8;
  const std::vector<double> zero{0.0};
  double prev = 0.8;
  for (int t = 0; t < 20; ++t) {
    decay = lif_step(decay, zero, p);
    CHECK(std::abs(decay.v[0]) <= prev + 1e-15);
    prev = std::abs(decay.v[0]);
  }
}

TEST_CASE("parameter validation") {
  const LifParams lam_one{1.0, 1.0};
  const LifParams lam_zero{0.0, 1.0};
  const LifParams bad_th{0.5, 0.0};
  const LifParams ok{0.5, 1.0};
  CHECK_THROWS_AS(lam_one.validate(), std::invalid_argument);
  CHECK_THROWS_AS(lam_zero.validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad_th.validate(), std::invalid_argument);
  CHECK_NOTHROW(ok.validate());
}
