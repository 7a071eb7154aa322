#pragma once

#include "wpn/channel.hpp"
#include "wpn/config.hpp"

namespace wpn {

// Components of the per-symbol energy statistic
//   V = X_A^2 * delta * Ts * G + 2 * X_A * delta * Z1 + Z0
// (Ts = 1 gives the usual form V = X_A^2 delta G + 2 X_A delta Z1 + Z0).
struct EnergyDecomposition {
    double V = 0.0;  // total received energy, sum |y_l|^2
    double G = 0.0;  // (1/L) sum |F_l|^2
    double Z1 = 0.0; // signal-noise cross term
    double Z0 = 0.0; // noise energy, sum |N_l|^2
};

// V = sum_l |y_l|^2 over the frame's samples.
double energy_statistic(const OversampledFrame& frame);

// Splits V into (G, Z1, Z0) using the frame latents; the noise samples are
// recovered as N_l = y_l - x*delta*exp(j*theta_l)*F_l.
EnergyDecomposition decompose(const OversampledFrame& frame, cplx x, const ChannelConfig& cfg);

// Reassembles V from the decomposition; equals energy_statistic(frame) to
// floating-point roundoff.
double reconstruct_energy(const EnergyDecomposition& d, double x_A, const ChannelConfig& cfg);

} // namespace wpn
