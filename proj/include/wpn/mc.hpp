#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

namespace wpn {

// Neumaier-compensated sum: immune to order-of-magnitude spreads, keeps the
// chunked reductions below stable to well under 1e-10 relative regardless of
// partition boundaries.
struct NeumaierSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    void merge(const NeumaierSum& o) {
        add(o.s);
        c += o.c;
    }
    double value() const { return s + c; }
};

// Mean / variance / standard error over compensated first and second moments.
struct MomentAccumulator {
    NeumaierSum sum;
    NeumaierSum sumsq;
    std::uint64_t n = 0;
    void add(double x) {
        sum.add(x);
        sumsq.add(x * x);
        ++n;
    }
    void merge(const MomentAccumulator& o) {
        sum.merge(o.sum);
        sumsq.merge(o.sumsq);
        n += o.n;
    }
    double mean() const { return sum.value() / static_cast<double>(n); }
    double variance() const { // sample variance (n-1 denominator)
        if (n < 2)
            return 0.0;
        const double m = mean();
        const double raw = sumsq.value() / static_cast<double>(n) - m * m;
        return std::max(0.0, raw) * static_cast<double>(n) / static_cast<double>(n - 1);
    }
    double stderr_of_mean() const {
        return n ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
    }
};

// Deterministic parallel map-reduce over trial indices [0, total).
//
// The trial range is cut into fixed-size chunks (independent of the thread
// count); workers grab chunks dynamically, the per-chunk partials are stored
// by chunk index and merged in chunk order afterwards. Results are therefore
// bit-identical for any --threads value.
//
// Worker: void worker(uint64_t begin, uint64_t end, Partial& out)
template <typename Partial, typename Worker>
std::vector<Partial> run_chunked(std::uint64_t total, std::uint64_t chunk_size,
                                 int threads, Worker worker) {
    if (chunk_size == 0)
        chunk_size = 1;
    const std::uint64_t n_chunks = (total + chunk_size - 1) / chunk_size;
    std::vector<Partial> partials(n_chunks);
    if (n_chunks == 0)
        return partials;
    if (threads < 1)
        threads = 1;
    const int n_workers =
        static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), n_chunks));
    if (n_workers == 1) {
        for (std::uint64_t ci = 0; ci < n_chunks; ++ci) {
            const std::uint64_t b = ci * chunk_size;
            worker(b, std::min(total, b + chunk_size), partials[ci]);
        }
        return partials;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int t = 0; t < n_workers; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::uint64_t ci = next.fetch_add(1);
                if (ci >= n_chunks)
                    return;
                const std::uint64_t b = ci * chunk_size;
                worker(b, std::min(total, b + chunk_size), partials[ci]);
            }
        });
    }
    for (std::thread& th : pool)
        th.join();
    return partials;
}

inline int default_thread_count() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

} // namespace wpn
