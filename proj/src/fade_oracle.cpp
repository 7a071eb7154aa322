#include "wpn/fade_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "wpn/channel.hpp"
#include "wpn/mc.hpp"
#include "wpn/rng.hpp"

namespace wpn {

namespace {

struct FadePartial {
    MomentAccumulator f2;  // |F|^2
    MomentAccumulator f4;  // |F|^4
    MomentAccumulator gd2; // (G-1)^2 over groups of L
    void merge_from(const FadePartial& o) {
        f2.merge(o.f2);
        f4.merge(o.f4);
        gd2.merge(o.gd2);
    }
};

// |F|^2 for one simulated fade draw. The fade is invariant to the path's
// starting phase, so the sub-path starts at 0 and uses only the path
// substream (same draw layout as simulate_phase_path's increments).
double fade_norm2(const ChannelConfig& cfg, RngStream& path_rng, double step_sd) {
    double re = 1.0, im = 0.0; // i = 0 term: exp(j*0)
    double th = 0.0;
    for (int i = 1; i < cfg.J; ++i) {
        th += step_sd * path_rng.next_gaussian();
        re += std::cos(th);
        im += std::sin(th);
    }
    const double inv = 1.0 / cfg.J;
    re *= inv;
    im *= inv;
    return re * re + im * im;
}

} // namespace

FadeOracleResult mc_fade_oracle(const ChannelConfig& cfg, std::uint64_t trials,
                                std::uint64_t seed, int threads,
                                std::uint64_t stream_base) {
    if (trials < 1)
        throw std::invalid_argument("mc_fade_oracle: trials must be >= 1");

    const RngStream root(seed);
    const double step_var = 6.283185307179586476925 * cfg.beta * cfg.delta / cfg.J;
    const double step_sd = std::sqrt(step_var);
    const std::uint64_t L = static_cast<std::uint64_t>(cfg.L);

    // Chunks hold whole G-groups so the grouping is independent of the
    // partition; 4096 draws per chunk keeps partials cheap.
    const std::uint64_t chunk = std::max<std::uint64_t>(L, (4096 / L) * L);

    auto partials = run_chunked<FadePartial>(
        trials, chunk, threads,
        [&](std::uint64_t b, std::uint64_t e, FadePartial& out) {
            double gsum = 0.0;
            for (std::uint64_t i = b; i < e; ++i) {
                RngStream path_rng =
                    root.stream(stream_base + i).substream(sub_path);
                const double f2 = fade_norm2(cfg, path_rng, step_sd);
                out.f2.add(f2);
                out.f4.add(f2 * f2);
                gsum += f2;
                if ((i + 1) % L == 0) {
                    const double g = gsum / static_cast<double>(L);
                    out.gd2.add((g - 1.0) * (g - 1.0));
                    gsum = 0.0;
                }
            }
        });

    FadePartial total;
    for (const FadePartial& p : partials)
        total.merge_from(p);

    FadeOracleResult r;
    r.trials = trials;
    r.m2 = total.f2.mean();
    r.m2_se = total.f2.stderr_of_mean();
    r.m4 = total.f4.mean();
    r.m4_se = total.f4.stderr_of_mean();
    if (total.gd2.n > 0) {
        r.msG = total.gd2.mean();
        r.msG_se = total.gd2.stderr_of_mean();
    }
    return r;
}

} // namespace wpn
