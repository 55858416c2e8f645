#pragma once

#include "quoherence/geometry.hpp"
#include "quoherence/kernels.hpp"
#include "quoherence/states.hpp"

#include <string_view>
#include <vector>

namespace quoherence {

enum class PatternKind { exact, farfield, incoherent, parallel, perp, mixed };

std::string_view to_string(PatternKind kind) noexcept;

struct PatternSample {
    ScreenGrid grid;
    std::vector<double> values;
    PatternKind kind = PatternKind::farfield;
};

/// |A_t|^2 = sqrt(2/pi) / |eps + i lambda D / (pi eps)|, the density scale of a
/// single propagated Gaussian.
double intensity_scale(const SlitGeometry& geom);

/// exp(-2 eps^2 x^2 / (lambda D / pi)^2)
double envelope(double x, const SlitGeometry& geom);

/// Per-slit amplitudes |A_t| c_j exp(-(x - x_j)^2 / (eps^2 + i lambda D / pi)).
std::vector<cplx> amplitude_at(double x, const SlitGeometry& geom, const QuantonPureState& state);

/// Full Fresnel-Gaussian density at the screen, no far-field approximations.
/// Evaluated as a sum of squared moduli, so it never goes negative.
double intensity_exact(double x, const SlitGeometry& geom, const QuantonPureState& state,
                       const DetectorGram& det);
double intensity_exact(double x, const SlitGeometry& geom, const QuantonMixedState& state,
                       const DetectorGram& det);

/// Far-field pattern |A_t|^2 E(x) sum_jk |rho_jk| cos(2 pi x ell (k - j) / (lambda D) + arg rho_jk).
double intensity_farfield(double x, const SlitGeometry& geom, const QuantonPureState& state,
                          const DetectorGram& det);
double intensity_mixed(double x, const SlitGeometry& geom, const QuantonMixedState& state,
                       const DetectorGram& det);
/// Far-field pattern for an arbitrary quanton density matrix in the slit basis.
double intensity_farfield_density(double x, const SlitGeometry& geom, const CMatrix& rho);

/// Phase-averaged far-field pattern: envelope times the slit populations.
double intensity_incoherent(double x, const SlitGeometry& geom, const QuantonState& state);

/// Far-field pattern with all detector states identical / all orthogonal.
double intensity_parallel(double x, const SlitGeometry& geom, const QuantonPureState& state);
double intensity_perp(double x, const SlitGeometry& geom, const QuantonPureState& state);

/// Density matrix seen in the two switchable detector modes: all paths
/// indistinguishable (kind == parallel, rho_jk = c_j conj(c_k) or q_jk) or all
/// paths distinguishable (kind == perp, diagonal part only).
CMatrix detector_mode_density(const QuantonState& state, PatternKind kind);

/// x_m = m * lambda * D / ell for m = 0..m_max.
std::vector<double> primary_maxima(const SlitGeometry& geom, int m_max);

/// (I_max - I_min) / (I_max + I_min) over the grid nodes inside `window`.
/// Throws Error{empty_window} with fewer than two nodes, Error{zero_intensity}
/// when the window is dark.
double visibility(const PatternSample& pattern, Interval window);

/// Far-field evaluator for a fixed density matrix; reused across grid points.
class FarfieldModel {
public:
    FarfieldModel(const SlitGeometry& geom, const CMatrix& rho);

    double operator()(double x) const;
    /// Pattern divided by |A_t|^2 E(x).
    double bracket(double x) const;
    double incoherent(double x) const;
    double envelope_at(double x) const;
    /// True when every nonzero rho_jk (j != k) is real and positive.
    bool zero_folded_phases() const noexcept { return zero_phases_; }
    int size() const noexcept { return n_; }

private:
    int n_;
    double scale_;
    double inv_spread_sq_;
    double eps_sq_;
    double kappa_;  // 2 pi ell / (lambda D)
    double trace_;
    // For each separation d = k - j > 0, sum over pairs of rho_jk.
    std::vector<cplx> band_;
    bool zero_phases_;
};

/// Exact evaluator: intensity = sum_r weight_r |sum_j u_rj g_j(x)|^2.
class ExactModel {
public:
    ExactModel(const SlitGeometry& geom, const QuantonPureState& state, const DetectorGram& det);
    ExactModel(const SlitGeometry& geom, const QuantonMixedState& state, const DetectorGram& det);

    double operator()(double x) const;

private:
    ExactModel(const SlitGeometry& geom, CMatrix rows);
    SlitGeometry geom_;
    double scale_;
    cplx inv_width_;  // 1 / (eps^2 + i lambda D / pi)
    CMatrix rows_;    // r x n
};

/// Evaluates a full pattern of the given kind over the grid. `kind` must be
/// exact, farfield, mixed or incoherent for the general state; parallel/perp
/// need a pure state and ignore `det`.
PatternSample evaluate_pattern(PatternKind kind, const SlitGeometry& geom, const QuantonState& state,
                               const DetectorGram& det, const ScreenGrid& grid,
                               Exec exec = Exec::parallel);

/// Pattern of a far-field model over a grid.
PatternSample evaluate_farfield(const FarfieldModel& model, const ScreenGrid& grid, PatternKind kind,
                                Exec exec = Exec::parallel);

}  // namespace quoherence
