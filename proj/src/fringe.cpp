#include "quoherence/fringe.hpp"

#include "quoherence/coherence.hpp"
#include "quoherence/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace quoherence {

namespace {

void require_slits(const SlitGeometry& geom, int n) {
    geom.validate();
    if (geom.n != n) {
        throw Error{ErrorCode::dimension_mismatch, "geometry has " + std::to_string(geom.n) +
                                                       " slits but the state has " + std::to_string(n)};
    }
}

cplx inverse_width(const SlitGeometry& geom) {
    return 1.0 / cplx{geom.eps * geom.eps, geom.spread()};
}

}  // namespace

std::string_view to_string(PatternKind kind) noexcept {
    switch (kind) {
        case PatternKind::exact: return "exact";
        case PatternKind::farfield: return "farfield";
        case PatternKind::incoherent: return "incoherent";
        case PatternKind::parallel: return "parallel";
        case PatternKind::perp: return "perp";
        case PatternKind::mixed: return "mixed";
    }
    return "unknown";
}

double intensity_scale(const SlitGeometry& geom) {
    const double width = std::abs(cplx{geom.eps, geom.spread() / geom.eps});
    return std::sqrt(2.0 / std::numbers::pi) / width;
}

double envelope(double x, const SlitGeometry& geom) {
    const double a = geom.spread();
    return std::exp(-2.0 * geom.eps * geom.eps * x * x / (a * a));
}

std::vector<cplx> amplitude_at(double x, const SlitGeometry& geom, const QuantonPureState& state) {
    require_slits(geom, state.size());
    const double root_scale = std::sqrt(intensity_scale(geom));
    const cplx inv_width = inverse_width(geom);
    std::vector<cplx> out(static_cast<std::size_t>(state.size()));
    for (int j = 0; j < state.size(); ++j) {
        const double dx = x - geom.slit_center(j);
        out[j] = root_scale * state.amplitude(j) * std::exp(-dx * dx * inv_width);
    }
    return out;
}

// ---------------------------------------------------------------------------

FarfieldModel::FarfieldModel(const SlitGeometry& geom, const CMatrix& rho)
    : n_{static_cast<int>(rho.rows())},
      scale_{0.0},
      inv_spread_sq_{0.0},
      eps_sq_{geom.eps * geom.eps},
      kappa_{2.0 * std::numbers::pi * geom.ell / (geom.lambda * geom.dist)},
      trace_{0.0},
      band_(static_cast<std::size_t>(std::max(n_ - 1, 0))),
      zero_phases_{true} {
    require_slits(geom, n_);
    scale_ = intensity_scale(geom);
    inv_spread_sq_ = 1.0 / (geom.spread() * geom.spread());
    for (int j = 0; j < n_; ++j) trace_ += rho(j, j).real();
    for (int j = 0; j < n_; ++j) {
        for (int k = j + 1; k < n_; ++k) {
            const cplx entry = 0.5 * (rho(j, k) + std::conj(rho(k, j)));
            band_[k - j - 1] += entry;
            const double mag = std::abs(entry);
            if (mag > 1e-15 && (entry.real() <= 0.0 || std::abs(entry.imag()) > 1e-12 * mag)) {
                zero_phases_ = false;
            }
        }
    }
}

double FarfieldModel::envelope_at(double x) const {
    return std::exp(-2.0 * eps_sq_ * x * x * inv_spread_sq_);
}

double FarfieldModel::bracket(double x) const {
    double sum = trace_;
    for (int d = 1; d < n_; ++d) {
        const double phase = kappa_ * x * d;
        const cplx& b = band_[d - 1];
        sum += 2.0 * (b.real() * std::cos(phase) - b.imag() * std::sin(phase));
    }
    return std::max(sum, 0.0);
}

double FarfieldModel::operator()(double x) const {
    return scale_ * envelope_at(x) * bracket(x);
}

double FarfieldModel::incoherent(double x) const {
    return scale_ * envelope_at(x) * trace_;
}

// ---------------------------------------------------------------------------

ExactModel::ExactModel(const SlitGeometry& geom, CMatrix rows)
    : geom_{geom}, scale_{intensity_scale(geom)}, inv_width_{inverse_width(geom)}, rows_{std::move(rows)} {}

ExactModel::ExactModel(const SlitGeometry& geom, const QuantonPureState& state, const DetectorGram& det)
    : ExactModel(geom, [&] {
          require_slits(geom, state.size());
          if (det.size() != state.size()) {
              throw Error{ErrorCode::dimension_mismatch, "detector Gram size differs from the state"};
          }
          return CMatrix(det.factor() * state.amplitudes().asDiagonal());
      }()) {}

ExactModel::ExactModel(const SlitGeometry& geom, const QuantonMixedState& state, const DetectorGram& det)
    : ExactModel(geom, [&] {
          require_slits(geom, state.size());
          // rho = F^dagger F; the pattern is sum_r |sum_j conj(F_rj) g_j|^2.
          return CMatrix(psd_factor(quanton_density(state, det)).conjugate());
      }()) {}

double ExactModel::operator()(double x) const {
    const auto n = rows_.cols();
    std::vector<cplx> branch(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
        const double dx = x - geom_.slit_center(static_cast<int>(j));
        branch[j] = std::exp(-dx * dx * inv_width_);
    }
    double total = 0.0;
    for (Eigen::Index r = 0; r < rows_.rows(); ++r) {
        cplx s{};
        for (Eigen::Index j = 0; j < n; ++j) s += rows_(r, j) * branch[j];
        total += std::norm(s);
    }
    return scale_ * total;
}

// ---------------------------------------------------------------------------

double intensity_exact(double x, const SlitGeometry& geom, const QuantonPureState& state,
                       const DetectorGram& det) {
    return ExactModel{geom, state, det}(x);
}

double intensity_exact(double x, const SlitGeometry& geom, const QuantonMixedState& state,
                       const DetectorGram& det) {
    return ExactModel{geom, state, det}(x);
}

double intensity_farfield_density(double x, const SlitGeometry& geom, const CMatrix& rho) {
    return FarfieldModel{geom, rho}(x);
}

double intensity_farfield(double x, const SlitGeometry& geom, const QuantonPureState& state,
                          const DetectorGram& det) {
    return intensity_farfield_density(x, geom, reduced_density(state, det).matrix());
}

double intensity_mixed(double x, const SlitGeometry& geom, const QuantonMixedState& state,
                       const DetectorGram& det) {
    return intensity_farfield_density(x, geom, quanton_density(state, det));
}

double intensity_incoherent(double x, const SlitGeometry& geom, const QuantonState& state) {
    const int n = state_size(state);
    require_slits(geom, n);
    double populations = 0.0;
    for (double p : state_priors(state)) populations += p;
    return intensity_scale(geom) * envelope(x, geom) * populations;
}

CMatrix detector_mode_density(const QuantonState& state, PatternKind kind) {
    CMatrix rho = std::visit(
        [](const auto& s) -> CMatrix {
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, QuantonPureState>) {
                const CVector c = s.amplitudes();
                return c * c.adjoint();
            } else {
                return s.coeffs();
            }
        },
        state);
    if (kind == PatternKind::perp) {
        const CMatrix diag = rho.diagonal().asDiagonal();
        return diag;
    }
    if (kind != PatternKind::parallel) {
        throw Error{ErrorCode::invalid_config, "detector mode must be parallel or perp"};
    }
    return rho;
}

double intensity_parallel(double x, const SlitGeometry& geom, const QuantonPureState& state) {
    return intensity_farfield_density(x, geom, detector_mode_density(state, PatternKind::parallel));
}

double intensity_perp(double x, const SlitGeometry& geom, const QuantonPureState& state) {
    return intensity_farfield_density(x, geom, detector_mode_density(state, PatternKind::perp));
}

std::vector<double> primary_maxima(const SlitGeometry& geom, int m_max) {
    geom.validate();
    if (m_max < 0) throw Error{ErrorCode::invalid_maximum_index, "m_max must be >= 0"};
    const double w = geom.fringe_width();
    std::vector<double> xs(static_cast<std::size_t>(m_max) + 1);
    for (int m = 0; m <= m_max; ++m) xs[m] = m * w;
    return xs;
}

double visibility(const PatternSample& pattern, Interval window) {
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    int used = 0;
    for (int i = 0; i < pattern.grid.num_points; ++i) {
        const double x = pattern.grid.x(i);
        if (!window.contains(x)) continue;
        hi = std::max(hi, pattern.values[i]);
        lo = std::min(lo, pattern.values[i]);
        ++used;
    }
    if (used < 2) throw Error{ErrorCode::empty_window, "visibility window holds fewer than two grid points"};
    if (!(hi + lo > 0.0)) throw Error{ErrorCode::zero_intensity, "pattern is dark inside the window"};
    return (hi - lo) / (hi + lo);
}

PatternSample evaluate_farfield(const FarfieldModel& model, const ScreenGrid& grid, PatternKind kind,
                                Exec exec) {
    grid.validate();
    PatternSample out{grid, {}, kind};
    if (kind == PatternKind::incoherent) {
        out.values = fill_grid(grid, [&](double x) { return model.incoherent(x); }, exec);
    } else {
        out.values = fill_grid(grid, model, exec);
    }
    return out;
}

PatternSample evaluate_pattern(PatternKind kind, const SlitGeometry& geom, const QuantonState& state,
                               const DetectorGram& det, const ScreenGrid& grid, Exec exec) {
    grid.validate();
    switch (kind) {
        case PatternKind::exact: {
            const ExactModel model = std::visit([&](const auto& s) { return ExactModel{geom, s, det}; }, state);
            return {grid, fill_grid(grid, model, exec), kind};
        }
        case PatternKind::farfield:
        case PatternKind::mixed:
        case PatternKind::incoherent:
            return evaluate_farfield(FarfieldModel{geom, quanton_density(state, det)}, grid, kind, exec);
        case PatternKind::parallel:
        case PatternKind::perp:
            return evaluate_farfield(FarfieldModel{geom, detector_mode_density(state, kind)}, grid, kind, exec);
    }
    throw Error{ErrorCode::invalid_config, "unknown pattern kind"};
}

}  // namespace quoherence
