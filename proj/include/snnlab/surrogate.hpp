#pragma once

#include <cmath>

namespace snnlab {

// Triangle surrogate for the spike derivative: (1/omega^2) * max(omega - |v - u_th|, 0).
// Support (u_th - omega, u_th + omega), peak 1/omega at v == u_th.
inline double surrogate_grad(double v, double u_th, double omega) {
  return std::max(omega - std::abs(v - u_th), 0.0) / (omega * omega);
}

// Ramp whose derivative is surrogate_grad: a smooth stand-in for the
// Heaviside used by the gradient-check forward mode. 0 below u_th - omega,
// 1 above u_th + omega, quadratic blend in between (value 1/2 at threshold).
inline double relaxed_spike(double v, double u_th, double omega) {
  const double x = v - u_th;
  if (x <= -omega) return 0.0;
  if (x >= omega) return 1.0;
  if (x < 0.0) {
    const double d = x + omega;
    return d * d / (2.0 * omega * omega);
  }
  const double d = omega - x;
  return 1.0 - d * d / (2.0 * omega * omega);
}

}  // namespace snnlab
