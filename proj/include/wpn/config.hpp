#pragma once

#include <cmath>
#include <stdexcept>

namespace wpn {

// Physical parameters of the oversampled Wiener phase-noise channel plus the
// derived quantities used everywhere else.
//
//   beta     - linewidth (FWHM) in units of 1/Ts
//   sigma2_N - additive-noise variance parameter; one receiver sample has
//              noise variance sigma2_N * delta
//   Ts       - symbol interval (1 by convention)
//   L        - receiver samples per symbol
//   J        - inner sub-steps per sample interval used to discretize the
//              filtered-fade integral
//   delta    - Ts / L
//   a        - exp(-pi * beta * delta)
struct ChannelConfig {
    double beta = 1.0;
    double sigma2_N = 1.0;
    double Ts = 1.0;
    int L = 1;
    int J = 64;
    double delta = 1.0;
    double a = 0.0;

    // Strict factory: enforces the physical-domain invariants.
    static ChannelConfig make(double beta, double sigma2_N, int L, int J, double Ts = 1.0) {
        if (!(beta > 0.0))
            throw std::invalid_argument("ChannelConfig: beta must be > 0");
        if (!(sigma2_N > 0.0))
            throw std::invalid_argument("ChannelConfig: sigma2_N must be > 0");
        return make_relaxed(beta, sigma2_N, L, J, Ts);
    }

    // Test-only factory: additionally admits beta = 0 (zero phase diffusion)
    // and sigma2_N = 0 (noise-free mode). Production entry points use make().
    static ChannelConfig make_relaxed(double beta, double sigma2_N, int L, int J, double Ts = 1.0) {
        if (!(beta >= 0.0) || !std::isfinite(beta))
            throw std::invalid_argument("ChannelConfig: beta must be finite and >= 0");
        if (!(sigma2_N >= 0.0) || !std::isfinite(sigma2_N))
            throw std::invalid_argument("ChannelConfig: sigma2_N must be finite and >= 0");
        if (L < 1)
            throw std::invalid_argument("ChannelConfig: L must be >= 1");
        if (J < 1)
            throw std::invalid_argument("ChannelConfig: J must be >= 1");
        if (!(Ts > 0.0) || !std::isfinite(Ts))
            throw std::invalid_argument("ChannelConfig: Ts must be finite and > 0");
        ChannelConfig cfg;
        cfg.beta = beta;
        cfg.sigma2_N = sigma2_N;
        cfg.Ts = Ts;
        cfg.L = L;
        cfg.J = J;
        cfg.delta = Ts / L;
        cfg.a = std::exp(-3.141592653589793238463 * beta * cfg.delta);
        return cfg;
    }

    double noise_scale() const { return sigma2_N * delta; } // E|N_k|^2
};

} // namespace wpn
