#include "wpn/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace wpn {

namespace {
constexpr double pi = 3.141592653589793238463;
constexpr double two_pi = 6.283185307179586476925;
} // namespace

double SymbolBlock::empirical_power() const {
    double s = 0.0;
    for (const cplx& x : symbols)
        s += std::norm(x);
    return symbols.empty() ? 0.0 : s / static_cast<double>(symbols.size());
}

std::vector<double> wiener_path(double theta0, double step_var, std::size_t count,
                                RngStream& rng) {
    if (count == 0)
        return {};
    if (!(step_var >= 0.0))
        throw std::invalid_argument("wiener_path: step_var must be >= 0");
    std::vector<double> path(count);
    path[0] = theta0;
    const double sd = std::sqrt(step_var);
    double cur = theta0;
    for (std::size_t i = 1; i < count; ++i) {
        cur += sd * rng.next_gaussian();
        path[i] = cur;
    }
    return path;
}

PhasePath simulate_phase_path(const ChannelConfig& cfg, std::size_t n_symbols,
                              const RngStream& trial_rng) {
    if (n_symbols < 1)
        throw std::invalid_argument("simulate_phase_path: n_symbols must be >= 1");
    RngStream theta0_rng = trial_rng.substream(sub_theta0);
    RngStream path_rng = trial_rng.substream(sub_path);
    const double theta0 = theta0_rng.next_uniform(-pi, pi);
    const double step_var = two_pi * cfg.beta * cfg.delta / cfg.J;
    const std::size_t count = n_symbols * static_cast<std::size_t>(cfg.L) *
                              static_cast<std::size_t>(cfg.J);
    PhasePath p;
    p.sub = wiener_path(theta0, step_var, count, path_rng);
    const std::size_t n_coarse = n_symbols * static_cast<std::size_t>(cfg.L);
    p.theta.resize(n_coarse);
    for (std::size_t k = 0; k < n_coarse; ++k)
        p.theta[k] = p.sub[k * static_cast<std::size_t>(cfg.J)];
    return p;
}

cplx filtered_fade(std::span<const double> sub_path, double theta_k) {
    if (sub_path.empty())
        throw std::invalid_argument("filtered_fade: empty sub-path");
    double re = 0.0, im = 0.0;
    for (const double th : sub_path) {
        const double d = th - theta_k;
        re += std::cos(d);
        im += std::sin(d);
    }
    const double inv = 1.0 / static_cast<double>(sub_path.size());
    return {re * inv, im * inv};
}

std::vector<OversampledFrame> channel_transmit(const SymbolBlock& block,
                                               const ChannelConfig& cfg,
                                               const RngStream& trial_rng) {
    if (block.size() == 0)
        throw std::invalid_argument("channel_transmit: empty symbol block");
    for (const cplx& x : block.symbols)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            throw std::invalid_argument("channel_transmit: non-finite symbol");

    const PhasePath path = simulate_phase_path(cfg, block.size(), trial_rng);
    RngStream noise_rng = trial_rng.substream(sub_noise);

    const std::size_t L = static_cast<std::size_t>(cfg.L);
    const std::size_t J = static_cast<std::size_t>(cfg.J);
    const double noise_sd = std::sqrt(cfg.noise_scale() / 2.0);

    std::vector<OversampledFrame> frames(block.size());
    for (std::size_t m = 0; m < block.size(); ++m) {
        OversampledFrame& f = frames[m];
        f.y.resize(L);
        f.theta.resize(L);
        f.fade.resize(L);
        f.noise_scale = cfg.noise_scale();
        const cplx x = block.symbols[m];
        for (std::size_t l = 0; l < L; ++l) {
            const std::size_t k = m * L + l; // 0-based global sample index
            const double theta_k = path.theta[k];
            const cplx F = filtered_fade(
                std::span<const double>(path.sub).subspan(k * J, J), theta_k);
            const cplx N{noise_sd * noise_rng.next_gaussian(),
                         noise_sd * noise_rng.next_gaussian()};
            f.theta[l] = theta_k;
            f.fade[l] = F;
            f.y[l] = x * cfg.delta * std::polar(1.0, theta_k) * F + N;
        }
    }
    return frames;
}

} // namespace wpn
