#include "quoherence/geometry.hpp"

#include "quoherence/error.hpp"

#include <cmath>
#include <numbers>

namespace quoherence {

void SlitGeometry::validate() const {
    if (n < 2) throw Error{ErrorCode::invalid_geometry, "slit count n must be >= 2"};
    const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(ell)) throw Error{ErrorCode::invalid_geometry, "slit spacing ell must be > 0"};
    if (!positive(eps)) throw Error{ErrorCode::invalid_geometry, "slit width eps must be > 0"};
    if (!positive(lambda)) throw Error{ErrorCode::invalid_geometry, "wavelength lambda must be > 0"};
    if (!positive(dist)) throw Error{ErrorCode::invalid_geometry, "screen distance must be > 0"};
}

double SlitGeometry::spread() const noexcept { return lambda * dist / std::numbers::pi; }

double SlitGeometry::fringe_width() const noexcept { return lambda * dist / ell; }

bool SlitGeometry::far_field_valid() const noexcept { return eps * eps <= 1e-3 * spread(); }

void ScreenGrid::validate() const {
    if (num_points < 2) throw Error{ErrorCode::invalid_config, "screen grid needs at least 2 points"};
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
        throw Error{ErrorCode::invalid_config, "screen grid needs x_min < x_max"};
    }
}

ScreenGrid ScreenGrid::default_for(const SlitGeometry& geom) {
    const double w = geom.fringe_width();
    return {-5.0 * w, 5.0 * w, 4001};
}

}  // namespace quoherence
