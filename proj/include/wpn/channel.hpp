#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "wpn/config.hpp"
#include "wpn/rng.hpp"

namespace wpn {

using cplx = std::complex<double>;

// Substream purposes used by one simulation trial. channel_transmit derives
// theta0/path/noise from the trial stream it is given, so a driver that owns
// the same trial stream can draw its own quantities (input power, symbol
// phase) without colliding.
enum Sub : std::uint64_t {
    sub_theta0 = 0,
    sub_path = 1,
    sub_noise = 2,
    sub_input = 3,
    sub_phase = 4,
};

struct SymbolBlock {
    std::vector<cplx> symbols;

    std::size_t size() const { return symbols.size(); }
    double amplitude(std::size_t m) const { return std::abs(symbols[m]); }
    double phase(std::size_t m) const { return std::arg(symbols[m]); }
    double empirical_power() const;

    static SymbolBlock constant(cplx x, std::size_t n) {
        return SymbolBlock{std::vector<cplx>(n, x)};
    }
};

// The L receiver samples of one symbol together with the latent phase and
// fade realizations (kept for tests and for the energy decomposition).
struct OversampledFrame {
    std::vector<cplx> y;       // receiver samples Y_k
    std::vector<double> theta; // Theta_k at sample-interval left edges
    std::vector<cplx> fade;    // filtered fades F_k
    double noise_scale = 0.0;  // sigma2_N * delta
};

// Wiener path: `count` values starting at theta0, consecutive values differ
// by independent N(0, step_var) increments.
std::vector<double> wiener_path(double theta0, double step_var, std::size_t count,
                                RngStream& rng);

struct PhasePath {
    std::vector<double> sub;   // n*L*J sub-step values (left edges)
    std::vector<double> theta; // n*L coarse values, theta[k-1] = sub[(k-1)*J]
};

// Theta(0) ~ U[-pi, pi) from substream sub_theta0, increments
// N(0, 2*pi*beta*delta/J) from substream sub_path.
PhasePath simulate_phase_path(const ChannelConfig& cfg, std::size_t n_symbols,
                              const RngStream& trial_rng);

// Left-Riemann approximation of the filtered fade over one sample interval:
// (1/J) * sum_i exp(j*(sub_path[i] - theta_k)). sub_path[0] must be theta_k.
cplx filtered_fade(std::span<const double> sub_path, double theta_k);

// Y_k = X_{ceil(k/L)} * delta * exp(j*Theta_k) * F_k + N_k over one
// continuous phase path for the whole block. Deterministic in
// (trial_rng, cfg, block); calling twice with the same stream repeats the
// output bit for bit.
std::vector<OversampledFrame> channel_transmit(const SymbolBlock& block,
                                               const ChannelConfig& cfg,
                                               const RngStream& trial_rng);

} // namespace wpn
