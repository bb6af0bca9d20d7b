#pragma once

#include <cstddef>

#include "snnlab/network.hpp"
#include "snnlab/signal.hpp"

namespace snnlab {

// Reset-free leaky integration of an input-difference drive:
// eps[t] = lambda*eps[t-1] + drive[t], eps[0] = 0.
struct PerturbationTrace {
  Signal eps;
  Signal drive;
};

// The simplified perturbation dynamics: pure leaky integration, no reset,
// no threshold.
PerturbationTrace mppd_simplified(const Signal& delta_input, double lambda);

// Exact membrane-potential difference between the two recorded runs,
// clean minus perturbed. Iterates eps[t] = leak*eps[t-1] + J[t] where J
// carries both the input difference and the reset fluctuation, which keeps
// it bitwise equal to mppd_simplified before either run's first spike.
Signal mppd_unsimplified(const NetworkDef& net, const ForwardTrace& clean,
                         const ForwardTrace& perturbed, std::size_t layer);

// (1 - lambda^t) / (1 - lambda) * j: the constant-drive closed form.
double mppd_closed_form(double j, double lambda, std::size_t t);

// l2 distance between the time-averaged spike vectors of two runs.
double tasad(const Signal& s_clean, const Signal& s_perturbed);

// sqrt(sum_t ||s[t] - s_tilde[t]||^2): spike train distance, sensitive to
// spike timing, not just rates.
double std_metric(const Signal& s_clean, const Signal& s_perturbed);

// Sum over neurons and steps of squared simplified-dynamics values fed by
// the given drive. A plain double sum, no normalization.
double ms_mppd(const Signal& drive, double lambda);

// ms_mppd / (dim * steps); reporting convenience only, never the loss term.
double ms_mppd_normalized(const Signal& drive, double lambda);

}  // namespace snnlab
