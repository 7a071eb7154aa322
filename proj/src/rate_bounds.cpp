#include "wpn/rate_bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "wpn/channel.hpp"
#include "wpn/energy.hpp"
#include "wpn/fade_moments.hpp"
#include "wpn/mc.hpp"

namespace wpn {

namespace {
constexpr double pi = 3.141592653589793238463;

void require_unit_Ts(const ChannelConfig& cfg, const char* who) {
    // The rate formulas are written in the Ts = 1 normalization
    // (rescale time units to use other symbol intervals).
    if (cfg.Ts != 1.0)
        throw std::invalid_argument(std::string(who) + ": requires cfg.Ts == 1");
}
} // namespace

double log_aux_density(double v, double x_A, const ChannelConfig& cfg) {
    if (!(x_A > 0.0))
        throw std::domain_error("log_aux_density: x_A must be > 0");
    const double var2 = 4.0 * x_A * x_A * cfg.delta * cfg.delta * cfg.sigma2_N; // 2*variance
    const double d = v - x_A * x_A * cfg.delta - cfg.sigma2_N;
    return -d * d / var2 - 0.5 * std::log(pi * var2);
}

double log_FV(double v, const InputLaw& law, const ChannelConfig& cfg) {
    const double ld = law.lambda * cfg.delta;
    const double d = v - cfg.sigma2_N;
    const double root = std::sqrt(1.0 + 4.0 * cfg.sigma2_N / law.lambda);
    return -0.5 * std::log(ld * (ld + 4.0 * cfg.delta * cfg.sigma2_N)) +
           (d - std::abs(d) * root) / (2.0 * cfg.delta * cfg.sigma2_N);
}

namespace {
RateEstimate make_estimate(double value, double snr, int L, BoundKind kind,
                           std::uint64_t trials, double se) {
    RateEstimate r;
    r.value_nats = value;
    r.snr = snr;
    r.L = L;
    r.kind = kind;
    r.trials = trials;
    r.stderr_nats = se;
    r.gap_nats = value - 0.5 * std::log(snr);
    return r;
}
} // namespace

RateEstimate analytic_rate_lower_bound(double snr, const ChannelConfig& cfg) {
    if (!(snr > 0.0))
        throw std::invalid_argument("analytic_rate_lower_bound: snr must be > 0");
    require_unit_Ts(cfg, "analytic_rate_lower_bound");
    const double msG = mean_square_G_deviation(cfg);
    const double value = 0.5 * std::log(snr) - 2.0 - 0.5 * std::log(8.0 * pi) -
                         1.0 / (2.0 * snr * cfg.delta) - 0.25 * snr * msG;
    return make_estimate(value, snr, cfg.L, BoundKind::analytic, 0, 0.0);
}

RateEstimate mc_rate_lower_bound(double snr, const ChannelConfig& cfg, const InputLaw& law,
                                 std::uint64_t trials, std::uint64_t seed,
                                 const McBoundOptions& opt) {
    if (trials < 1)
        throw std::invalid_argument("mc_rate_lower_bound: trials must be >= 1");
    require_unit_Ts(cfg, "mc_rate_lower_bound");
    const double expect_P = snr * cfg.sigma2_N;
    if (!(std::abs(law.P - expect_P) <= 1e-9 * expect_P))
        throw std::invalid_argument(
            "mc_rate_lower_bound: law.P must equal snr * cfg.sigma2_N");

    const RngStream root(seed);
    const double pmin_over_lambda = law.P_min / law.lambda;
    const std::size_t L = static_cast<std::size_t>(cfg.L);
    const double noise_sd = std::sqrt(cfg.noise_scale() / 2.0);

    auto partials = run_chunked<MomentAccumulator>(
        trials, 4096, opt.threads,
        [&](std::uint64_t b, std::uint64_t e, MomentAccumulator& out) {
            for (std::uint64_t t = b; t < e; ++t) {
                const RngStream trial = root.stream(opt.trial_base + t);
                RngStream input_rng = trial.substream(sub_input);
                const double x_P = sample_input_power(law, input_rng);
                const double x_A = std::sqrt(x_P);
                double x_phi = 0.0;
                if (opt.random_symbol_phase) {
                    RngStream phase_rng = trial.substream(sub_phase);
                    x_phi = phase_rng.next_uniform(-pi, pi);
                }
                const cplx x = std::polar(x_A, x_phi);

                double V = 0.0;
                if (opt.force_unit_fade) {
                    // Test mode: F = 1 and Theta_k = Theta(0); consumes the
                    // theta0/noise substreams exactly as channel_transmit so
                    // the beta = 0 channel reproduces it bit for bit.
                    RngStream theta0_rng = trial.substream(sub_theta0);
                    RngStream noise_rng = trial.substream(sub_noise);
                    const double theta0 = theta0_rng.next_uniform(-pi, pi);
                    const cplx s = x * cfg.delta * std::polar(1.0, theta0);
                    for (std::size_t l = 0; l < L; ++l) {
                        const cplx N{noise_sd * noise_rng.next_gaussian(),
                                     noise_sd * noise_rng.next_gaussian()};
                        V += std::norm(s + N);
                    }
                } else {
                    const auto frames =
                        channel_transmit(SymbolBlock{{x}}, cfg, trial);
                    V = energy_statistic(frames[0]);
                }
                out.add(log_aux_density(V, x_A, cfg) - pmin_over_lambda -
                        log_FV(V, law, cfg));
            }
        });

    MomentAccumulator total;
    for (const MomentAccumulator& p : partials)
        total.merge(p);
    return make_estimate(total.mean(), snr, cfg.L, BoundKind::monte_carlo, trials,
                         total.stderr_of_mean());
}

PrelogFit prelog_fit(const std::vector<RateEstimate>& estimates) {
    if (estimates.size() < 4)
        throw std::invalid_argument("prelog_fit: need at least 4 grid points");
    double lo = estimates.front().snr, hi = estimates.front().snr;
    for (const RateEstimate& e : estimates) {
        lo = std::min(lo, e.snr);
        hi = std::max(hi, e.snr);
    }
    // 20 dB span = factor 100 in linear SNR
    if (!(hi / lo >= 100.0 * (1.0 - 1e-12)))
        throw std::invalid_argument("prelog_fit: grid must span at least 20 dB");

    const std::size_t n = estimates.size();
    double sx = 0.0, sy = 0.0;
    for (const RateEstimate& e : estimates) {
        sx += std::log(e.snr);
        sy += e.value_nats;
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const RateEstimate& e : estimates) {
        const double dx = std::log(e.snr) - mx;
        sxx += dx * dx;
        sxy += dx * (e.value_nats - my);
    }
    PrelogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.residuals.reserve(n);
    for (const RateEstimate& e : estimates)
        fit.residuals.push_back(e.value_nats -
                                (fit.intercept + fit.slope * std::log(e.snr)));
    return fit;
}

} // namespace wpn
