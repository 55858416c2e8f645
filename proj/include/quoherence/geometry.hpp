#pragma once

namespace quoherence {

/// n slits centred at x_j = j * ell (j = 1..n), Gaussian aperture width eps,
/// wavelength lambda and slit-to-screen distance dist. All lengths in metres.
struct SlitGeometry {
    int n = 3;
    double ell = 50e-6;
    double eps = 5e-6;
    double lambda = 500e-9;
    double dist = 1.0;

    /// Throws Error{invalid_geometry}.
    void validate() const;

    /// lambda * D / pi
    double spread() const noexcept;
    /// w = lambda * D / ell, spacing of the primary maxima.
    double fringe_width() const noexcept;
    /// Centre of slit j, 0-based.
    double slit_center(int j) const noexcept { return (j + 1) * ell; }
    /// eps^2 <= 1e-3 * lambda * D / pi
    bool far_field_valid() const noexcept;

    friend bool operator==(const SlitGeometry&, const SlitGeometry&) = default;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const noexcept { return hi - lo; }
    bool contains(double x) const noexcept { return x >= lo && x <= hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Uniform screen grid, num_points >= 2 nodes spanning [x_min, x_max].
struct ScreenGrid {
    double x_min = 0.0;
    double x_max = 0.0;
    int num_points = 4001;

    void validate() const;
    double step() const noexcept { return (x_max - x_min) / (num_points - 1); }
    double x(int i) const noexcept { return x_min + i * step(); }
    Interval span() const noexcept { return {x_min, x_max}; }

    /// 4001 points over [-5w, 5w].
    static ScreenGrid default_for(const SlitGeometry& geom);

    friend bool operator==(const ScreenGrid&, const ScreenGrid&) = default;
};

}  // namespace quoherence
