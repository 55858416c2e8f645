#include "quoherence/protocols.hpp"

#include "quoherence/coherence.hpp"
#include "quoherence/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace quoherence {

std::string_view to_string(Method method) noexcept {
    return method == Method::analytic ? "analytic" : "mc";
}

std::string_view to_string(Protocol protocol) noexcept {
    return protocol == Protocol::coherent_incoherent ? "coherent_incoherent" : "parallel_perp";
}

void CountingConfig::validate() const {
    if (num_photons < 1) throw Error{ErrorCode::invalid_config, "num_photons must be >= 1"};
    if (num_bins < 10) throw Error{ErrorCode::invalid_config, "num_bins must be >= 10"};
    if (static_cast<std::uint64_t>(num_bins) > num_photons) {
        throw Error{ErrorCode::invalid_config, "num_bins must not exceed num_photons"};
    }
    if (shards < 1) throw Error{ErrorCode::invalid_config, "shards must be >= 1"};
    if (window && !(window->lo < window->hi)) {
        throw Error{ErrorCode::empty_window, "counting window must satisfy lo < hi"};
    }
}

std::vector<double> sample_hits(const PatternSample& pattern, const CountingConfig& cfg, Exec exec) {
    cfg.validate();
    const PiecewiseLinearCdf cdf{pattern, cfg.window.value_or(pattern.grid.span())};
    return sample_cdf(cdf, cfg.num_photons, cfg.seed, Stream::coherent, cfg.shards, exec);
}

IntensityEstimate estimate_intensity_at(std::span<const double> hits, double x_target, double bin_width) {
    if (hits.empty()) throw Error{ErrorCode::invalid_config, "no hits to estimate an intensity from"};
    if (!(bin_width > 0.0)) throw Error{ErrorCode::invalid_config, "bin width must be > 0"};
    const double lo = x_target - 0.5 * bin_width;
    const double hi = x_target + 0.5 * bin_width;
    const auto count = static_cast<std::uint64_t>(
        std::count_if(hits.begin(), hits.end(), [&](double x) { return x >= lo && x < hi; }));
    if (count == 0) {
        std::ostringstream os;
        os << "no hits within " << bin_width << " m of x = " << x_target << "; widen the bin or add photons";
        throw Error{ErrorCode::empty_bin, os.str()};
    }
    const double exposure = static_cast<double>(hits.size()) * bin_width;
    return {static_cast<double>(count) / exposure, std::sqrt(static_cast<double>(count)) / exposure, count};
}

double locate_primary_maximum(const FarfieldModel& model, const SlitGeometry& geom, int m_index) {
    if (m_index < 0) throw Error{ErrorCode::invalid_maximum_index, "primary maximum index must be >= 0"};
    const double w = geom.fringe_width();
    const double x_m = m_index * w;
    if (model.zero_folded_phases()) return x_m;

    constexpr int kPoints = 2001;
    const ScreenGrid local{x_m - 0.5 * w, x_m + 0.5 * w, kPoints};
    // The ratio to the incoherent reference is what gets measured, so search
    // the envelope-free bracket; the envelope slope would bias the argmax.
    int best = 0;
    double best_value = -1.0;
    for (int i = 0; i < kPoints; ++i) {
        const double v = model.bracket(local.x(i));
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    if (best == 0 || best == kPoints - 1) return local.x(best);
    // Parabola through the three nodes around the argmax.
    const double h = local.step();
    const double f0 = model.bracket(local.x(best - 1));
    const double f1 = best_value;
    const double f2 = model.bracket(local.x(best + 1));
    const double curvature = f0 - 2.0 * f1 + f2;
    const double shift = curvature < 0.0 ? 0.5 * h * (f0 - f2) / curvature : 0.0;
    return local.x(best) + std::clamp(shift, -h, h);
}

namespace {

struct Setup {
    ScreenGrid grid;
    Interval window;
    double bin_width;
};

Setup monte_carlo_setup(const SlitGeometry& geom, const MeasureOptions& options, double x) {
    const ScreenGrid grid = options.grid.value_or(ScreenGrid::default_for(geom));
    grid.validate();
    options.counting.validate();
    const Interval window = options.counting.window.value_or(grid.span());
    const double bin_width = options.bin_width > 0.0 ? options.bin_width : geom.fringe_width() / 50.0;
    if (x - 0.5 * bin_width < window.lo || x + 0.5 * bin_width > window.hi) {
        std::ostringstream os;
        os << "maximum m = " << options.m_index << " at x = " << x << " lies outside the counting window";
        throw Error{ErrorCode::invalid_maximum_index, os.str()};
    }
    return {grid, window, bin_width};
}

CoherenceEstimate ratio_estimate(double top, double top_rel_err, double base, double base_rel_err, int n) {
    if (!(base > 0.0)) throw Error{ErrorCode::zero_intensity, "reference intensity is zero at the maximum"};
    const double ratio = top / base;
    CoherenceEstimate est;
    est.c_value = (ratio - 1.0) / (n - 1);
    est.std_error = ratio * std::hypot(top_rel_err, base_rel_err) / (n - 1);
    est.n_used = n;
    return est;
}

void require_matching(const QuantonState& state, const SlitGeometry& geom) {
    geom.validate();
    if (state_size(state) != geom.n) {
        throw Error{ErrorCode::dimension_mismatch, "geometry slit count differs from the state size"};
    }
}

}  // namespace

CoherenceEstimate measure_coherence(const QuantonState& state, const DetectorGram& det,
                                    const SlitGeometry& geom, const MeasureOptions& options) {
    require_matching(state, geom);
    const int n = geom.n;
    const CMatrix rho = quanton_density(state, det);
    const FarfieldModel model{geom, rho};
    const double x = locate_primary_maximum(model, geom, options.m_index);

    CoherenceEstimate est;
    if (options.method == Method::analytic) {
        est = ratio_estimate(model(x), 0.0, model.incoherent(x), 0.0, n);
        est.std_error = 0.0;
    } else {
        const Setup setup = monte_carlo_setup(geom, options, x);
        const auto& cfg = options.counting;

        const PatternSample coherent = evaluate_farfield(model, setup.grid, PatternKind::farfield, options.exec);
        const PiecewiseLinearCdf coherent_cdf{coherent, setup.window};
        const auto coherent_hits =
            sample_cdf(coherent_cdf, cfg.num_photons, cfg.seed, Stream::coherent, cfg.shards, options.exec);

        const PatternSample reference = evaluate_farfield(model, setup.grid, PatternKind::incoherent, options.exec);
        const PiecewiseLinearCdf reference_cdf{reference, setup.window};
        const auto randomized_hits = sample_phase_randomized(rho, geom, reference_cdf, cfg.num_photons, cfg.seed,
                                                             Stream::incoherent, cfg.shards, options.exec);

        // Rates are per photon landing in the window; the window mass restores
        // the absolute density so both arms share one normalization.
        const auto top = estimate_intensity_at(coherent_hits, x, setup.bin_width);
        const auto base = estimate_intensity_at(randomized_hits, x, setup.bin_width);
        est = ratio_estimate(top.rate * coherent_cdf.mass(), top.std_error / top.rate,
                             base.rate * reference_cdf.mass(), base.std_error / base.rate, n);
    }
    est.method = options.method;
    est.protocol = Protocol::coherent_incoherent;
    est.x_used = x;
    return est;
}

CoherenceEstimate measure_input_coherence(const QuantonState& state, const SlitGeometry& geom,
                                          const MeasureOptions& options) {
    require_matching(state, geom);
    const int n = geom.n;
    const FarfieldModel indistinguishable{geom, detector_mode_density(state, PatternKind::parallel)};
    const FarfieldModel distinguishable{geom, detector_mode_density(state, PatternKind::perp)};
    const double x = locate_primary_maximum(indistinguishable, geom, options.m_index);

    CoherenceEstimate est;
    if (options.method == Method::analytic) {
        est = ratio_estimate(indistinguishable(x), 0.0, distinguishable(x), 0.0, n);
        est.std_error = 0.0;
    } else {
        const Setup setup = monte_carlo_setup(geom, options, x);
        const auto& cfg = options.counting;
        const auto arm = [&](const FarfieldModel& model, PatternKind kind, Stream stream) {
            const PatternSample pattern = evaluate_farfield(model, setup.grid, kind, options.exec);
            const PiecewiseLinearCdf cdf{pattern, setup.window};
            const auto hits = sample_cdf(cdf, cfg.num_photons, cfg.seed, stream, cfg.shards, options.exec);
            const auto e = estimate_intensity_at(hits, x, setup.bin_width);
            return std::pair{e.rate * cdf.mass(), e.std_error / e.rate};
        };
        const auto [top, top_err] = arm(indistinguishable, PatternKind::parallel, Stream::parallel);
        const auto [base, base_err] = arm(distinguishable, PatternKind::perp, Stream::perp);
        est = ratio_estimate(top, top_err, base, base_err, n);
    }
    est.method = options.method;
    est.protocol = Protocol::parallel_perp;
    est.x_used = x;
    return est;
}

double unnormalized_coherence(const CoherenceEstimate& estimate) noexcept {
    return (estimate.n_used - 1) * estimate.c_value;
}

DualityReport duality_report(const QuantonState& state, const DetectorGram& det, const SlitGeometry& geom,
                             const MeasureOptions& options) {
    DualityReport report;
    report.c_theory = coherence(state, det);
    report.c_measured = measure_coherence(state, det, geom, options);
    report.d_q = distinguishability(state, det);
    report.gap = duality_gap(report.c_measured.c_value, report.d_q);
    report.satisfied =
        report.c_measured.c_value + report.d_q <= 1.0 + 3.0 * report.c_measured.std_error + 1e-10;
    return report;
}

}  // namespace quoherence
