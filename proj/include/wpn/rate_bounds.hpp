#pragma once

#include <cstdint>
#include <vector>

#include "wpn/config.hpp"
#include "wpn/input_law.hpp"

namespace wpn {

enum class BoundKind { analytic, monte_carlo };

struct RateEstimate {
    double value_nats = 0.0;
    double snr = 0.0; // linear, P / sigma2_N
    int L = 1;
    BoundKind kind = BoundKind::analytic;
    std::uint64_t trials = 0;    // 0 for analytic
    double stderr_nats = 0.0;    // 0 for analytic
    double gap_nats = 0.0;       // value_nats - 0.5*ln(snr)
};

// log of the auxiliary channel density Q_{V|X_A}(v | x_A): Gaussian in v
// with mean x_A^2*delta + sigma2_N and variance 2*x_A^2*delta^2*sigma2_N.
double log_aux_density(double v, double x_A, const ChannelConfig& cfg);

// log of the closed-form output-density surrogate F_V(v).
double log_FV(double v, const InputLaw& law, const ChannelConfig& cfg);

// Closed-form lower bound (P_min = P/2):
//   value = 0.5*ln(snr) - 2 - 0.5*ln(8*pi) - 1/(2*snr*delta) - (snr/4)*msG.
// Uses the exact msG from fade-statistics, not its small-delta limit.
RateEstimate analytic_rate_lower_bound(double snr, const ChannelConfig& cfg);

struct McBoundOptions {
    bool force_unit_fade = false;    // test mode: F = 1, Theta_k = Theta(0)
    bool random_symbol_phase = false; // X_Phi ~ U[-pi,pi) instead of 0
    int threads = 1;
    std::uint64_t trial_base = 0;    // offset into the trial stream space
};

// Monte Carlo estimate of the auxiliary-channel bound
//   I(X_A; V) >= E[ log Q_{V|X_A}(V|X_A) - P_min/lambda - log F_V(V) ],
// one single-symbol channel simulation per trial. The law's P must equal
// snr * sigma2_N. Deterministic in (seed, trial_base); bit-identical for
// any thread count.
RateEstimate mc_rate_lower_bound(double snr, const ChannelConfig& cfg, const InputLaw& law,
                                 std::uint64_t trials, std::uint64_t seed,
                                 const McBoundOptions& opt = {});

struct PrelogFit {
    double slope = 0.0;     // d(value_nats) / d(ln snr)
    double intercept = 0.0;
    std::vector<double> residuals;
};

// Ordinary least squares of value_nats against ln(snr). Requires >= 4
// points spanning >= 20 dB.
PrelogFit prelog_fit(const std::vector<RateEstimate>& estimates);

} // namespace wpn
