#pragma once

#include <cstdint>

#include "wpn/config.hpp"

namespace wpn {

struct FadeOracleResult {
    double m2 = 0.0, m2_se = 0.0;
    double m4 = 0.0, m4_se = 0.0;
    double msG = 0.0, msG_se = 0.0;
    std::uint64_t trials = 0; // fade draws; msG uses trials/L groups of L
};

// Pure-simulation estimates of (m2, m4, msG): `trials` independent fade
// draws through the channel-core sub-step machinery, never the closed forms.
// One trial is one filtered-fade sample; consecutive groups of L draws form
// the G samples for msG. Deterministic in (seed); bit-identical for any
// thread count.
FadeOracleResult mc_fade_oracle(const ChannelConfig& cfg, std::uint64_t trials,
                                std::uint64_t seed, int threads = 1,
                                std::uint64_t stream_base = 0);

} // namespace wpn
