#pragma once

#include "quoherence/fringe.hpp"
#include "quoherence/sampling.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace quoherence {

enum class Method { analytic, monte_carlo };
enum class Protocol { coherent_incoherent, parallel_perp };

std::string_view to_string(Method method) noexcept;
std::string_view to_string(Protocol protocol) noexcept;

struct CountingConfig {
    std::uint64_t num_photons = 1'000'000;
    std::uint64_t seed = 0;
    /// Defaults to the full pattern grid.
    std::optional<Interval> window;
    int num_bins = 100;
    /// Fixed shard count so results do not depend on the thread count.
    int shards = 16;

    /// Throws Error{invalid_config}.
    void validate() const;

    friend bool operator==(const CountingConfig&, const CountingConfig&) = default;
};

struct CoherenceEstimate {
    double c_value = 0.0;
    double std_error = 0.0;
    Method method = Method::analytic;
    Protocol protocol = Protocol::coherent_incoherent;
    int n_used = 0;
    double x_used = 0.0;
};

struct MeasureOptions {
    int m_index = 1;
    Method method = Method::analytic;
    /// Defaults to ScreenGrid::default_for(geom).
    std::optional<ScreenGrid> grid;
    CountingConfig counting;
    /// Photon-counting aperture; 0 selects w / 50.
    double bin_width = 0.0;
    Exec exec = Exec::parallel;
};

/// num_photons i.i.d. screen positions drawn from the pattern restricted to
/// cfg.window (inverse CDF of the trapezoid-integrated grid). Deterministic in
/// (seed, shards). Throws Error{zero_mass}.
std::vector<double> sample_hits(const PatternSample& pattern, const CountingConfig& cfg,
                                Exec exec = Exec::parallel);

struct IntensityEstimate {
    double rate = 0.0;
    double std_error = 0.0;
    std::uint64_t count = 0;
};

/// Hits in [x - w/2, x + w/2) per photon per metre with the Poisson error.
/// Throws Error{empty_bin}.
IntensityEstimate estimate_intensity_at(std::span<const double> hits, double x_target, double bin_width);

/// Position of the m-th primary maximum of a far-field pattern. Uses
/// x_m = m w when every folded phase is zero, otherwise the argmax of the
/// envelope-divided pattern within half a fringe of x_m.
double locate_primary_maximum(const FarfieldModel& model, const SlitGeometry& geom, int m_index);

/// C_expt = (I_max - I_inc) / ((n - 1) I_inc) with the phase randomizer as
/// the incoherent reference.
CoherenceEstimate measure_coherence(const QuantonState& state, const DetectorGram& det,
                                    const SlitGeometry& geom, const MeasureOptions& options = {});

/// (I_par - I_perp) / ((n - 1) I_perp): the detector switched between fully
/// indistinguishable and fully distinguishable paths. Needs no Gram matrix.
CoherenceEstimate measure_input_coherence(const QuantonState& state, const SlitGeometry& geom,
                                          const MeasureOptions& options = {});

/// (n - 1) * C, the l1 coherence without the 1/(n-1) normalization.
double unnormalized_coherence(const CoherenceEstimate& estimate) noexcept;

struct DualityReport {
    double c_theory = 0.0;
    CoherenceEstimate c_measured;
    double d_q = 0.0;
    double gap = 0.0;  // 1 - (C_measured + D_Q)
    bool satisfied = false;
};

DualityReport duality_report(const QuantonState& state, const DetectorGram& det, const SlitGeometry& geom,
                             const MeasureOptions& options = {});

}  // namespace quoherence
