#include "quoherence/sampling.hpp"

#include "quoherence/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace quoherence {

namespace {

double interpolate(const PatternSample& pattern, double x) {
    const auto& grid = pattern.grid;
    const double pos = (x - grid.x_min) / grid.step();
    const int i = std::clamp(static_cast<int>(std::floor(pos)), 0, grid.num_points - 2);
    const double t = std::clamp(pos - i, 0.0, 1.0);
    return pattern.values[i] + t * (pattern.values[i + 1] - pattern.values[i]);
}

}  // namespace

PiecewiseLinearCdf::PiecewiseLinearCdf(const PatternSample& pattern, Interval window) {
    const auto& grid = pattern.grid;
    grid.validate();
    if (pattern.values.size() != static_cast<std::size_t>(grid.num_points)) {
        throw Error{ErrorCode::dimension_mismatch, "pattern values do not match its grid"};
    }
    const double slack = 1e-9 * grid.step();
    if (!(window.lo < window.hi) || window.lo < grid.x_min - slack || window.hi > grid.x_max + slack) {
        throw Error{ErrorCode::empty_window, "sampling window must be a nonempty part of the pattern grid"};
    }
    const auto push = [this](double x, double v) {
        x_.push_back(x);
        density_.push_back(std::max(v, 0.0));
    };
    push(window.lo, interpolate(pattern, window.lo));
    for (int i = 0; i < grid.num_points; ++i) {
        const double x = grid.x(i);
        if (x > window.lo && x < window.hi) push(x, pattern.values[i]);
    }
    push(window.hi, interpolate(pattern, window.hi));

    cumulative_.assign(x_.size(), 0.0);
    for (std::size_t k = 0; k + 1 < x_.size(); ++k) {
        cumulative_[k + 1] = cumulative_[k] + 0.5 * (density_[k] + density_[k + 1]) * (x_[k + 1] - x_[k]);
    }
    if (!(mass() > 0.0)) throw Error{ErrorCode::zero_mass, "pattern has no mass inside the sampling window"};
}

double PiecewiseLinearCdf::quantile(double u) const noexcept {
    const double r = u * mass();
    auto it = std::upper_bound(cumulative_.begin() + 1, cumulative_.end(), r);
    if (it == cumulative_.end()) --it;
    const auto k = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
    const double a = density_[k];
    const double b = density_[k + 1];
    const double h = x_[k + 1] - x_[k];
    const double rest = r - cumulative_[k];
    // Solve a t + (b - a) t^2 / (2h) = rest in the cancellation-free form.
    const double denom = a + std::sqrt(std::max(a * a + 2.0 * (b - a) * rest / h, 0.0));
    const double t = denom > 0.0 ? 2.0 * rest / denom : 0.0;
    return x_[k] + std::clamp(t, 0.0, h);
}

std::vector<double> sample_cdf(const PiecewiseLinearCdf& cdf, std::uint64_t count, std::uint64_t seed,
                               Stream stream, int shards, Exec exec) {
    if (shards < 1) throw Error{ErrorCode::invalid_config, "shard count must be >= 1"};
    return run_shards(count, shards, exec, [&](int shard, std::uint64_t n, std::vector<double>& out) {
        ShardRng rng{seed, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(shard)};
        out.resize(n);
        for (auto& x : out) x = cdf.quantile(rng.uniform());
    });
}

std::vector<double> sample_phase_randomized(const CMatrix& rho, const SlitGeometry& geom,
                                            const PiecewiseLinearCdf& envelope_cdf, std::uint64_t count,
                                            std::uint64_t seed, Stream stream, int shards, Exec exec) {
    if (shards < 1) throw Error{ErrorCode::invalid_config, "shard count must be >= 1"};
    struct Pair {
        int j, k;
        double magnitude, phase;
    };
    const int n = static_cast<int>(rho.rows());
    std::vector<Pair> pairs;
    double trace = 0.0;
    double bound = 0.0;
    for (int j = 0; j < n; ++j) {
        trace += rho(j, j).real();
        for (int k = j + 1; k < n; ++k) {
            const cplx entry = 0.5 * (rho(j, k) + std::conj(rho(k, j)));
            if (std::abs(entry) > 0.0) pairs.push_back({j, k, std::abs(entry), std::arg(entry)});
            bound += 2.0 * std::abs(entry);
        }
    }
    bound += trace;
    const double kappa = 2.0 * std::numbers::pi * geom.ell / (geom.lambda * geom.dist);
    constexpr double kTwoPi = 2.0 * std::numbers::pi;

    return run_shards(count, shards, exec, [&](int shard, std::uint64_t m, std::vector<double>& out) {
        ShardRng rng{seed, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(shard)};
        std::vector<double> theta(static_cast<std::size_t>(n));
        out.resize(m);
        for (auto& hit : out) {
            for (;;) {
                const double x = envelope_cdf.quantile(rng.uniform());
                for (auto& t : theta) t = kTwoPi * rng.uniform();
                double bracket = trace;
                for (const Pair& p : pairs) {
                    bracket += 2.0 * p.magnitude *
                               std::cos(kappa * x * (p.k - p.j) + p.phase + theta[p.j] - theta[p.k]);
                }
                if (rng.uniform() * bound < bracket) {
                    hit = x;
                    break;
                }
            }
        }
    });
}

}  // namespace quoherence
