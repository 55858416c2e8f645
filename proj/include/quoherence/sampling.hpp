#pragma once

#include "quoherence/fringe.hpp"
#include "quoherence/kernels.hpp"

#include <cstdint>
#include <vector>

namespace quoherence {

/// Piecewise-linear density through the pattern nodes inside a window, with
/// the window edges interpolated. Cumulative mass is the trapezoid rule.
class PiecewiseLinearCdf {
public:
    /// Throws Error{empty_window} for a window outside the grid and
    /// Error{zero_mass} when the pattern integrates to zero over the window.
    PiecewiseLinearCdf(const PatternSample& pattern, Interval window);

    /// Trapezoid integral of the pattern over the window.
    double mass() const noexcept { return cumulative_.back(); }
    /// Inverse CDF for u in [0, 1).
    double quantile(double u) const noexcept;

private:
    std::vector<double> x_;
    std::vector<double> density_;
    std::vector<double> cumulative_;
};

/// Stream tags keep the protocol arms on independent random streams.
enum class Stream : std::uint32_t { coherent = 0, incoherent = 1, parallel = 2, perp = 3 };

/// i.i.d. hits from the CDF; shard s uses ShardRng(seed, stream, s).
std::vector<double> sample_cdf(const PiecewiseLinearCdf& cdf, std::uint64_t count, std::uint64_t seed,
                               Stream stream, int shards, Exec exec);

/// Hits from the far-field pattern of `rho` when every photon sees fresh
/// uniform slit phases rho_jk -> rho_jk e^{i(theta_j - theta_k)}. Proposals
/// come from `envelope_cdf` (the incoherent pattern) and are accepted with
/// probability bracket(x, theta) / sum_jk |rho_jk|; a rejection redraws both
/// the phases and the position.
std::vector<double> sample_phase_randomized(const CMatrix& rho, const SlitGeometry& geom,
                                            const PiecewiseLinearCdf& envelope_cdf, std::uint64_t count,
                                            std::uint64_t seed, Stream stream, int shards, Exec exec);

}  // namespace quoherence
