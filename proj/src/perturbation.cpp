#include "snnlab/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace snnlab {

namespace {

void check_same_shape(const Signal& a, const Signal& b, const char* who) {
  if (a.steps != b.steps || a.dim != b.dim) {
    throw std::invalid_argument(std::string(who) + ": shapes differ, " + std::to_string(a.steps) +
                                "x" + std::to_string(a.dim) + " vs " + std::to_string(b.steps) +
                                "x" + std::to_string(b.dim));
  }
}

}  // namespace

PerturbationTrace mppd_simplified(const Signal& delta_input, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("mppd_simplified: lambda must lie in (0,1)");
  }
  if (delta_input.steps < 1) {
    throw std::invalid_argument("mppd_simplified: drive needs at least one step");
  }
  PerturbationTrace out;
  out.drive = delta_input;
  out.eps = Signal(delta_input.steps, delta_input.dim);
  std::vector<double> eps(delta_input.dim, 0.0);
  for (std::size_t t = 0; t < delta_input.steps; ++t) {
    const auto d = delta_input.step(t);
    for (std::size_t i = 0; i < eps.size(); ++i) eps[i] = lambda * eps[i] + d[i];
    std::copy(eps.begin(), eps.end(), out.eps.step(t).begin());
  }
  return out;
}

Signal mppd_unsimplified(const NetworkDef& net, const ForwardTrace& clean,
                         const ForwardTrace& perturbed, std::size_t layer) {
  if (layer < 1 || layer > clean.layers.size()) {
    throw std::invalid_argument("mppd_unsimplified: layer " + std::to_string(layer) +
                                " out of range [1, " + std::to_string(clean.layers.size()) + "]");
  }
  const LayerTrace& a = clean.layers[layer - 1];
  const LayerTrace& b = perturbed.layers[layer - 1];
  check_same_shape(a.v, b.v, "mppd_unsimplified");

  const std::size_t T = a.v.steps;
  const std::size_t n = a.v.dim;
  Signal out(T, n);
  std::vector<double> eps(n, 0.0);
  for (std::size_t t = 1; t <= T; ++t) {
    const double leak = net.effective_leak(layer - 1, t);
    for (std::size_t i = 0; i < n; ++i) {
      // J = delta_input - leak*(v s - v~ s~) from the previous step; the
      // reset term vanishes exactly while neither run has spiked.
      double j = a.input_current.at(t - 1, i) - b.input_current.at(t - 1, i);
      if (t > 1) {
        j -= leak * (a.v.at(t - 2, i) * a.s.at(t - 2, i) - b.v.at(t - 2, i) * b.s.at(t - 2, i));
      }
      eps[i] = leak * eps[i] + j;
      out.at(t - 1, i) = eps[i];
    }
  }
  return out;
}

double mppd_closed_form(double j, double lambda, std::size_t t) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("mppd_closed_form: lambda must lie in (0,1)");
  }
  return (1.0 - std::pow(lambda, static_cast<double>(t))) / (1.0 - lambda) * j;
}

double tasad(const Signal& s_clean, const Signal& s_perturbed) {
  check_same_shape(s_clean, s_perturbed, "tasad");
  const double T = static_cast<double>(s_clean.steps);
  double acc = 0.0;
  for (std::size_t i = 0; i < s_clean.dim; ++i) {
    double diff = 0.0;
    for (std::size_t t = 0; t < s_clean.steps; ++t)
      diff += s_clean.at(t, i) - s_perturbed.at(t, i);
    diff /= T;
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

double std_metric(const Signal& s_clean, const Signal& s_perturbed) {
  check_same_shape(s_clean, s_perturbed, "std_metric");
  double acc = 0.0;
  for (std::size_t k = 0; k < s_clean.data.size(); ++k) {
    const double d = s_clean.data[k] - s_perturbed.data[k];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double ms_mppd(const Signal& drive, double lambda) {
  const PerturbationTrace p = mppd_simplified(drive, lambda);
  double acc = 0.0;
  for (double e : p.eps.data) acc += e * e;
  return acc;
}

double ms_mppd_normalized(const Signal& drive, double lambda) {
  return ms_mppd(drive, lambda) / (static_cast<double>(drive.dim) * static_cast<double>(drive.steps));
}

}  // namespace snnlab
