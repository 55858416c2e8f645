#pragma once

// Data-parallel kernels. Each parallel kernel has a serial reference with the
// same per-element arithmetic; both must produce bit-identical output.

#include "quoherence/geometry.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace quoherence {

enum class Exec { serial, parallel };

template <class F>
void fill_grid_serial(const ScreenGrid& grid, const F& f, std::span<double> out) {
    for (int i = 0; i < grid.num_points; ++i) out[i] = f(grid.x(i));
}

template <class F>
void fill_grid_parallel(const ScreenGrid& grid, const F& f, std::span<double> out) {
    const int count = grid.num_points;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < count; ++i) out[i] = f(grid.x(i));
}

template <class F>
std::vector<double> fill_grid(const ScreenGrid& grid, const F& f, Exec exec) {
    std::vector<double> out(static_cast<std::size_t>(grid.num_points));
    if (exec == Exec::parallel) {
        fill_grid_parallel(grid, f, out);
    } else {
        fill_grid_serial(grid, f, out);
    }
    return out;
}

/// Random stream for one photon shard. The engine is mt19937_64 seeded through
/// std::seed_seq{seed_lo, seed_hi, stream, shard}; both algorithms are fixed by
/// the C++ standard, so a given (seed, stream, shard) yields the same sequence
/// on every conforming platform. Doubles take the top 53 bits of each draw.
class ShardRng {
public:
    ShardRng(std::uint64_t seed, std::uint32_t stream, std::uint32_t shard);

    /// Uniform on [0, 1).
    double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    std::uint64_t next() noexcept { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Photons assigned to `shard` when `total` are split over `shards` shards;
/// the remainder goes to the lowest shard indices.
std::uint64_t shard_share(std::uint64_t total, int shards, int shard) noexcept;

/// Runs fn(shard, count, out) for every shard and concatenates the outputs in
/// shard order. The parallel path runs shards concurrently.
template <class ShardFn>
std::vector<double> run_shards(std::uint64_t total, int shards, Exec exec, const ShardFn& fn) {
    std::vector<std::vector<double>> parts(static_cast<std::size_t>(shards));
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (int s = 0; s < shards; ++s) fn(s, shard_share(total, shards, s), parts[s]);
    } else {
        for (int s = 0; s < shards; ++s) fn(s, shard_share(total, shards, s), parts[s]);
    }
    std::vector<double> merged;
    merged.reserve(total);
    for (const auto& part : parts) merged.insert(merged.end(), part.begin(), part.end());
    return merged;
}

/// Counts hits in num_bins equal bins over `window`; hits outside are dropped.
std::vector<std::uint64_t> bin_hits_serial(std::span<const double> hits, Interval window, int num_bins);
std::vector<std::uint64_t> bin_hits_parallel(std::span<const double> hits, Interval window, int num_bins);
std::vector<std::uint64_t> bin_hits(std::span<const double> hits, Interval window, int num_bins,
                                    Exec exec = Exec::parallel);

}  // namespace quoherence
