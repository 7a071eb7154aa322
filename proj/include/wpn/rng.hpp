#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace wpn {

// Philox4x64-10 counter-based generator (Salmon et al., reference constants;
// the block function is bit-compatible with numpy.random.Philox).
//
// The 256-bit counter is split into a hierarchy so that independent random
// streams can be handed out without coordination:
//   ctr[3] = stream   (e.g. Monte Carlo trial index)
//   ctr[2] = substream (purpose within a trial: phase path, noise, ...)
//   ctr[1] = lane     (extra level, rarely needed)
//   ctr[0] = position (advanced as the stream is consumed)
// Distinct (stream, substream, lane) tuples never produce overlapping
// blocks, independent of how much each stream is consumed.
struct Philox4x64 {
    static constexpr std::uint64_t M0 = 0xD2E7470EE14C6C93ull;
    static constexpr std::uint64_t M1 = 0xCA5A826395121157ull;
    static constexpr std::uint64_t W0 = 0x9E3779B97F4A7C15ull;
    static constexpr std::uint64_t W1 = 0xBB67AE8584CAA73Bull;

    static std::array<std::uint64_t, 4> block(std::array<std::uint64_t, 4> x,
                                              std::array<std::uint64_t, 2> k) {
        for (int r = 0; r < 10; ++r) {
            if (r > 0) {
                k[0] += W0;
                k[1] += W1;
            }
            const unsigned __int128 p0 = static_cast<unsigned __int128>(M0) * x[0];
            const unsigned __int128 p1 = static_cast<unsigned __int128>(M1) * x[2];
            const std::uint64_t hi0 = static_cast<std::uint64_t>(p0 >> 64);
            const std::uint64_t lo0 = static_cast<std::uint64_t>(p0);
            const std::uint64_t hi1 = static_cast<std::uint64_t>(p1 >> 64);
            const std::uint64_t lo1 = static_cast<std::uint64_t>(p1);
            x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
        }
        return x;
    }
};

class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : key_{seed, 0} {}

    // Derived streams restart lower counter levels at zero; deriving is cheap
    // and does not disturb the parent.
    [[nodiscard]] RngStream stream(std::uint64_t id) const {
        RngStream r(*this);
        r.ctr_ = {0, 0, 0, id};
        r.reset_buffer();
        return r;
    }
    [[nodiscard]] RngStream substream(std::uint64_t id) const {
        RngStream r(*this);
        r.ctr_[2] = id;
        r.ctr_[1] = 0;
        r.ctr_[0] = 0;
        r.reset_buffer();
        return r;
    }
    [[nodiscard]] RngStream lane(std::uint64_t id) const {
        RngStream r(*this);
        r.ctr_[1] = id;
        r.ctr_[0] = 0;
        r.reset_buffer();
        return r;
    }

    std::uint64_t next_u64() {
        if (buf_pos_ == 4) {
            buf_ = Philox4x64::block(ctr_, key_);
            advance_counter();
            buf_pos_ = 0;
        }
        return buf_[buf_pos_++];
    }

    // uniform on [0, 1), 53-bit resolution
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }
    // uniform on (0, 1], safe as a log() argument
    double next_double_open() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }
    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }
    // standard normal, Box-Muller with the second deviate cached
    double next_gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double r = std::sqrt(-2.0 * std::log(next_double_open()));
        const double t = 6.283185307179586476925287 * next_double();
        cached_ = r * std::sin(t);
        have_cached_ = true;
        return r * std::cos(t);
    }
    double next_exponential(double mean) {
        return -mean * std::log(next_double_open());
    }

    std::array<std::uint64_t, 4> counter() const { return ctr_; }
    std::array<std::uint64_t, 2> key() const { return key_; }

private:
    void reset_buffer() {
        buf_pos_ = 4;
        have_cached_ = false;
    }
    void advance_counter() {
        if (++ctr_[0] == 0)
            if (++ctr_[1] == 0)
                if (++ctr_[2] == 0)
                    ++ctr_[3];
    }

    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> ctr_{0, 0, 0, 0};
    std::array<std::uint64_t, 4> buf_{};
    int buf_pos_ = 4;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace wpn
