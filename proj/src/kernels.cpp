#include "quoherence/kernels.hpp"

#include "quoherence/error.hpp"

#include <cmath>

namespace quoherence {

ShardRng::ShardRng(std::uint64_t seed, std::uint32_t stream, std::uint32_t shard) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                      stream, shard};
    engine_.seed(seq);
}

std::uint64_t shard_share(std::uint64_t total, int shards, int shard) noexcept {
    const auto s = static_cast<std::uint64_t>(shards);
    const auto i = static_cast<std::uint64_t>(shard);
    return total / s + (i < total % s ? 1 : 0);
}

namespace {

void check_bins(Interval window, int num_bins) {
    if (num_bins < 1 || !(window.hi > window.lo)) {
        throw Error{ErrorCode::invalid_config, "histogram needs num_bins >= 1 and a nonempty window"};
    }
}

inline int bin_index(double x, Interval window, int num_bins) {
    if (x < window.lo || x > window.hi) return -1;
    const int b = static_cast<int>((x - window.lo) / window.length() * num_bins);
    return b >= num_bins ? num_bins - 1 : b;
}

}  // namespace

std::vector<std::uint64_t> bin_hits_serial(std::span<const double> hits, Interval window, int num_bins) {
    check_bins(window, num_bins);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(num_bins), 0);
    for (double x : hits) {
        const int b = bin_index(x, window, num_bins);
        if (b >= 0) ++counts[b];
    }
    return counts;
}

std::vector<std::uint64_t> bin_hits_parallel(std::span<const double> hits, Interval window, int num_bins) {
    check_bins(window, num_bins);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(num_bins), 0);
    const auto count = static_cast<std::ptrdiff_t>(hits.size());
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(static_cast<std::size_t>(num_bins), 0);
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            const int b = bin_index(hits[i], window, num_bins);
            if (b >= 0) ++local[b];
        }
#pragma omp critical
        for (int b = 0; b < num_bins; ++b) counts[b] += local[b];
    }
    return counts;
}

std::vector<std::uint64_t> bin_hits(std::span<const double> hits, Interval window, int num_bins, Exec exec) {
    return exec == Exec::parallel ? bin_hits_parallel(hits, window, num_bins)
                                  : bin_hits_serial(hits, window, num_bins);
}

}  // namespace quoherence
