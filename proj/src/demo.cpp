#include "snnlab/demo.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "snnlab/csv.hpp"
#include "snnlab/network.hpp"
#include "snnlab/numerics.hpp"
#include "snnlab/perturbation.hpp"
#include "snnlab/svg.hpp"

namespace snnlab {

namespace {

constexpr double kLambda = 0.99;
constexpr double kUth = 1.0;
constexpr double kBaseInput = 0.3;
constexpr double kConstPerturbation = 0.1;
constexpr double kNoiseStd = 0.3;

struct NeuronRun {
  Signal v, u, s, current;
};

// Single neuron driven by an arbitrary per-step current.
NeuronRun simulate(const Signal& current, const LifParams& p) {
  NeuronRun run{Signal(current.steps, 1), Signal(current.steps, 1), Signal(current.steps, 1),
                current};
  LayerState state(1);
  for (std::size_t t = 0; t < current.steps; ++t) {
    state = lif_step(state, current.step(t), p);
    run.v.at(t, 0) = state.v[0];
    run.u.at(t, 0) = state.u[0];
    run.s.at(t, 0) = state.s[0];
  }
  return run;
}

std::vector<double> prefix_tasad(const Signal& s_clean, const Signal& s_pert) {
  std::vector<double> out(s_clean.steps);
  double sum = 0.0;
  for (std::size_t t = 0; t < s_clean.steps; ++t) {
    sum += s_clean.at(t, 0) - s_pert.at(t, 0);
    out[t] = std::abs(sum) / static_cast<double>(t + 1);
  }
  return out;
}

std::vector<double> prefix_std(const Signal& s_clean, const Signal& s_pert) {
  std::vector<double> out(s_clean.steps);
  double acc = 0.0;
  for (std::size_t t = 0; t < s_clean.steps; ++t) {
    const double d = s_clean.at(t, 0) - s_pert.at(t, 0);
    acc += d * d;
    out[t] = std::sqrt(acc);
  }
  return out;
}

std::size_t first_spike(const Signal& s) {
  for (std::size_t t = 0; t < s.steps; ++t)
    if (s.at(t, 0) != 0.0) return t + 1;
  return s.steps + 1;
}

void emit_scenario(const std::string& name, const std::string& out_dir, std::uint64_t seed,
                   std::size_t steps, const std::vector<double>& simplified,
                   const std::vector<double>& unsimplified, const std::vector<double>& tasad_p,
                   const std::vector<double>& std_p) {
  CsvWriter csv;
  csv.metadata(run_metadata(seed, kLambda, kUth, steps, 0.0, 0.5, 1.0) + " scenario=" + name);
  csv.header({"t", "eps_simplified", "eps_unsimplified", "tasad", "std"});
  for (std::size_t t = 0; t < steps; ++t) {
    csv.row({static_cast<double>(t + 1), simplified[t], unsimplified[t], tasad_p[t], std_p[t]});
  }
  csv.commit(out_dir + "/mppd_" + name + ".csv");

  SvgChart chart("Membrane potential perturbation (" + name + " perturbation)", "time step",
                 "difference / metric");
  std::vector<std::pair<double, double>> a, b, c, d;
  for (std::size_t t = 0; t < steps; ++t) {
    const double x = static_cast<double>(t + 1);
    a.emplace_back(x, simplified[t]);
    b.emplace_back(x, unsimplified[t]);
    c.emplace_back(x, tasad_p[t]);
    d.emplace_back(x, std_p[t]);
  }
  chart.add_series("simplified dynamics", "#000000", a);
  chart.add_series("unsimplified dynamics", "#888888", b);
  chart.add_series("TASAD (prefix)", "#1f77b4", c);
  chart.add_series("STD (prefix)", "#d62728", d);
  chart.commit(out_dir + "/mppd_" + name + ".svg");
}

}  // namespace

double lag1_autocorrelation(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = xs[i] - mean;
    den += c * c;
    if (i + 1 < n) num += c * (xs[i + 1] - mean);
  }
  return den > 0.0 ? num / den : 0.0;
}

MppdDemoResult run_mppd_demo(std::size_t steps, std::uint64_t seed) {
  MppdDemoResult r;
  r.steps = steps;
  const LifParams p{kLambda, kUth};

  // Constant scenario through the full network path: a 1-1 net with unit
  // weight turns the image value into the input current directly.
  NetworkDef net;
  net.layer_sizes = {1, 1};
  net.weights = {Matrix(1, 1, {1.0})};
  net.kinds = {NeuronKind::Lif};
  net.dlif_a = {{}};
  net.steps = steps;
  net.lif = p;
  net.readout = Matrix(1, 1, {0.0});
  net.validate();

  const std::vector<double> x{kBaseInput};
  const std::vector<double> x_tilde{kBaseInput + kConstPerturbation};
  const auto [clean, pert] = forward_pair(net, x, x_tilde);

  // Perturbed minus clean, so the curves carry the sign of the +0.1 bump.
  const Signal drive = input_current_difference(pert, clean, 1);
  const PerturbationTrace simplified = mppd_simplified(drive, kLambda);
  const Signal unsimplified = mppd_unsimplified(net, pert, clean, 1);
  for (std::size_t t = 0; t < steps; ++t) {
    r.eps_simplified.push_back(simplified.eps.at(t, 0));
    r.eps_unsimplified.push_back(unsimplified.at(t, 0));
  }
  r.tasad_prefix = prefix_tasad(clean.layers[0].s, pert.layers[0].s);
  r.std_prefix = prefix_std(clean.layers[0].s, pert.layers[0].s);
  r.first_spike_step = std::min(first_spike(clean.layers[0].s), first_spike(pert.layers[0].s));

  // Gaussian scenario: noise rides on the input current step by step, so it
  // runs on the raw neuron recurrence rather than the direct-coded network.
  Rng rng(seed);
  Signal clean_current = Signal::constant_scalar(steps, kBaseInput);
  Signal pert_current = clean_current;
  r.noise.resize(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    r.noise[t] = rng.gaussian(kNoiseStd * kUth);
    pert_current.at(t, 0) += r.noise[t];
  }
  const NeuronRun run_clean = simulate(clean_current, p);
  const NeuronRun run_pert = simulate(pert_current, p);

  Signal noise_drive(steps, 1);
  for (std::size_t t = 0; t < steps; ++t) noise_drive.at(t, 0) = r.noise[t];
  const PerturbationTrace gsimpl = mppd_simplified(noise_drive, kLambda);
  for (std::size_t t = 0; t < steps; ++t) {
    r.eps_gaussian_simplified.push_back(gsimpl.eps.at(t, 0));
    r.eps_gaussian_unsimplified.push_back(run_pert.v.at(t, 0) - run_clean.v.at(t, 0));
  }
  r.tasad_prefix_gaussian = prefix_tasad(run_clean.s, run_pert.s);
  r.std_prefix_gaussian = prefix_std(run_clean.s, run_pert.s);
  r.noise_lag1_autocorr = lag1_autocorrelation(r.noise);
  r.eps_lag1_autocorr = lag1_autocorrelation(r.eps_gaussian_simplified);
  return r;
}

void write_mppd_demo_outputs(const MppdDemoResult& r, std::uint64_t seed,
                             const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  emit_scenario("constant", out_dir, seed, r.steps, r.eps_simplified, r.eps_unsimplified,
                r.tasad_prefix, r.std_prefix);
  emit_scenario("gaussian", out_dir, seed, r.steps, r.eps_gaussian_simplified,
                r.eps_gaussian_unsimplified, r.tasad_prefix_gaussian, r.std_prefix_gaussian);
}

}  // namespace snnlab
