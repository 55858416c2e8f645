// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include "quoherence/coherence.hpp"
#include "quoherence/fringe.hpp"
#include "quoherence/protocols.hpp"
#include "support/random_instances.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace quoherence;
using quoherence::test_support::InstanceGenerator;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

SlitGeometry geometry(int n) {
    SlitGeometry g;
    g.n = n;
    return g;
}

double relative_error(double value, double reference) {
    return std::abs(value - reference) / std::max(std::abs(reference), 1e-12);
}

std::string fmt(const char* format, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

Outcome complementarity() {
    InstanceGenerator gen{1001};
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const int n = gen.size(2, 6);
        const auto s = gen.pure(n);
        const auto det = gen.gram(n);
        worst = std::max(worst, std::abs(coherence_pure(s, det) + distinguishability(s.priors(), det) - 1.0));
    }
    return {worst <= 1e-12, fmt("1000 instances, max |C + D_Q - 1| = %.2e (tol 1e-12)", worst)};
}

Outcome closure_pure() {
    InstanceGenerator gen{1002};
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int n = gen.size(2, 6);
        const auto s = gen.pure(n, true);
        const auto det = gen.gram(n, true);
        const double measured = measure_coherence(s, det, geometry(n)).c_value;
        worst = std::max(worst, relative_error(measured, coherence_pure(s, det)));
    }
    return {worst <= 1e-3, fmt("100 zero-phase instances, max rel. error = %.2e (tol 1e-3)", worst)};
}

Outcome closure_mixed() {
    InstanceGenerator gen{1003};
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int n = gen.size(2, 6);
        const auto q = gen.mixed(n, true);
        const auto det = gen.gram(n, true);
        const double measured = measure_coherence(q, det, geometry(n)).c_value;
        worst = std::max(worst, relative_error(measured, coherence_mixed(q, det)));
    }
    return {worst <= 1e-3, fmt("100 zero-phase PSD q, max rel. error = %.2e (tol 1e-3)", worst)};
}

Outcome input_coherence() {
    InstanceGenerator gen{1004};
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int n = gen.size(2, 6);
        const auto s = gen.pure(n, true);
        double expected = 0.0;
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                if (j != k) expected += s.moduli()[j] * s.moduli()[k];
            }
        }
        expected /= n - 1;
        worst = std::max(worst, std::abs(measure_input_coherence(s, geometry(n)).c_value - expected));
    }
    return {worst <= 1e-3, fmt("100 zero-phase states, max |C_in - sum/(n-1)| = %.2e (tol 1e-3)", worst)};
}

Outcome maximum_choice() {
    InstanceGenerator gen{1005};
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int n = gen.size(2, 6);
        const QuantonState s = i % 2 ? QuantonState{gen.pure(n, true)} : QuantonState{gen.mixed(n, true)};
        const auto det = gen.gram(n, true);
        MeasureOptions o;
        o.m_index = 1;
        const double c1 = measure_coherence(s, det, geometry(n), o).c_value;
        for (int m : {2, 3}) {
            o.m_index = m;
            worst = std::max(worst, relative_error(measure_coherence(s, det, geometry(n), o).c_value, c1));
        }
    }
    return {worst < 1e-6, fmt("100 instances, m = 1,2,3, max rel. diff = %.2e (tol 1e-6)", worst)};
}

Outcome duality_inequality() {
    InstanceGenerator gen{1006};
    double worst = -1.0, widest = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const int n = gen.size(2, 6);
        const QuantonState q = gen.mixed(n);
        const auto det = gen.gram(n);
        const double sum = coherence(q, det) + distinguishability(q, det);
        worst = std::max(worst, sum - 1.0);
        widest = std::max(widest, 1.0 - sum);
    }
    return {worst <= 1e-10 && widest > 0.1,
            fmt("10000 mixed instances, max (C + D_Q - 1) = %.2e (tol 1e-10), max gap = %.3f (need > 0.1)", worst,
                widest)};
}

Outcome two_slit_equivalence() {
    // Envelope-flat geometry (eps = 50 nm) so the fringe contrast is not
    // diluted by the Gaussian envelope across one period.
    SlitGeometry g = geometry(2);
    g.eps = 50e-9;
    const double w = g.fringe_width();
    const auto grid = ScreenGrid::default_for(g);
    double worst_g = 0.0, worst_c = 0.0;
    for (double overlap : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto det = DetectorGram::uniform(2, overlap);
        const auto s = QuantonPureState::equal(2);
        const double v = visibility(evaluate_pattern(PatternKind::farfield, g, s, det, grid), {0.4 * w, 1.6 * w});
        worst_g = std::max(worst_g, std::abs(v - overlap));
        worst_c = std::max(worst_c, std::abs(v - coherence_pure(s, det)));
    }
    return {worst_g <= 1e-3 && worst_c <= 1e-3,
            fmt("eps = 50 nm, g in {0,.25,.5,.75,1}: max |V - g| = %.2e, max |V - C| = %.2e (tol 1e-3)", worst_g,
                worst_c)};
}

Outcome exact_vs_farfield() {
    const auto g = geometry(3);
    const auto s = QuantonPureState::equal(3);
    const auto det = DetectorGram::identical(3);
    double worst = 0.0;
    for (int m = 1; m <= 3; ++m) {
        const double x = m * g.fringe_width();
        worst = std::max(worst, relative_error(intensity_exact(x, g, s, det), intensity_farfield(x, g, s, det)));
    }
    return {worst <= 1e-2, fmt("default scenario, x_1..x_3: max rel. deviation = %.2e (tol 1e-2)", worst)};
}

Outcome monte_carlo_statistics() {
    const auto g = geometry(3);
    const QuantonState s = QuantonPureState::equal(3);
    const auto det = DetectorGram::uniform(3, 0.5);
    const double analytic = measure_coherence(s, det, g).c_value;
    const auto run = [&](std::uint64_t seed, std::uint64_t photons) {
        MeasureOptions o;
        o.method = Method::monte_carlo;
        o.counting.seed = seed;
        o.counting.num_photons = photons;
        return measure_coherence(s, det, g, o);
    };
    int within = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto e = run(seed, 1'000'000);
        within += std::abs(e.c_value - analytic) <= 3.0 * e.std_error;
    }
    double ratio_sum = 0.0, lo = 1.0, hi = 0.0;
    for (std::uint64_t seed = 1000; seed < 1020; ++seed) {
        const double r = run(seed, 4'000'000).std_error / run(seed, 1'000'000).std_error;
        ratio_sum += r;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    const double mean_ratio = ratio_sum / 20.0;
    return {within >= 97 && mean_ratio >= 0.45 && mean_ratio <= 0.55,
            fmt("N = 1e6: %d/100 seeds within 3 sigma (need >= 97); sigma(4e6)/sigma(1e6) mean %.3f over 20 "
                "trials (range %.3f..%.3f, need mean in [0.45, 0.55])",
                within, mean_ratio, lo, hi)};
}

Outcome durr_criteria() {
    InstanceGenerator gen{1010};
    bool zero_iff = true;
    double worst_max = 0.0, worst_unitary = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const int n = gen.size(2, 6);
        const CMatrix rho = gen.density(n);
        const CMatrix diag = rho.diagonal().asDiagonal();
        zero_iff &= coherence_of_density(ReducedDensity::from_matrix(diag)) == 0.0;
        const bool has_offdiag = (rho - diag).cwiseAbs().maxCoeff() >= 1e-12;
        zero_iff &= (coherence_of_density(ReducedDensity::from_matrix(rho)) > 0.0) == has_offdiag;

        std::vector<double> phases(static_cast<std::size_t>(n));
        for (auto& p : phases) p = gen.uniform(0.0, 2.0 * std::numbers::pi);
        const QuantonPureState equal{std::vector<double>(static_cast<std::size_t>(n), 1.0 / std::sqrt(n)), phases};
        worst_max = std::max(worst_max,
                             std::abs(coherence_of_density(reduced_density(equal, DetectorGram::identical(n))) - 1.0));

        CVector u(n);
        for (int j = 0; j < n; ++j) u(j) = std::polar(1.0, gen.uniform(0.0, 2.0 * std::numbers::pi));
        const CMatrix rotated = u.asDiagonal() * rho * u.conjugate().asDiagonal();
        worst_unitary = std::max(worst_unitary, std::abs(coherence_of_density(ReducedDensity::from_matrix(rotated)) -
                                                         coherence_of_density(ReducedDensity::from_matrix(rho))));
    }
    return {zero_iff && worst_max <= 1e-12 && worst_unitary <= 1e-12,
            fmt("1000 instances: C=0 iff off-diagonals vanish: %s; max |C-1| at equal populations = %.2e; "
                "max diagonal-unitary change = %.2e (tol 1e-12)",
                zero_iff ? "yes" : "no", worst_max, worst_unitary)};
}

Outcome orthogonal_null() {
    InstanceGenerator gen{1011};
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const int n = gen.size(2, 6);
        const auto g = geometry(n);
        const auto grid = ScreenGrid::default_for(g);
        const QuantonState s = i % 2 ? QuantonState{gen.pure(n)} : QuantonState{gen.mixed(n)};
        const auto det = DetectorGram::identity(n);
        const auto far = evaluate_pattern(PatternKind::farfield, g, s, det, grid);
        const auto inc = evaluate_pattern(PatternKind::incoherent, g, s, det, grid);
        for (int k = 0; k < grid.num_points; ++k) worst = std::max(worst, std::abs(far.values[k] - inc.values[k]));
    }
    return {worst <= 1e-12, fmt("20 states x 4001 points: max |I_far - I_inc| = %.2e (tol 1e-12)", worst)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"complementarity identity", complementarity},
        {"protocol closure (pure)", closure_pure},
        {"protocol closure (mixed)", closure_mixed},
        {"input-coherence protocol", input_coherence},
        {"maximum-choice independence", maximum_choice},
        {"duality inequality", duality_inequality},
        {"two-slit equivalence", two_slit_equivalence},
        {"exact vs far-field", exact_vs_farfield},
        {"Monte Carlo statistics", monte_carlo_statistics},
        {"Durr criteria", durr_criteria},
        {"orthogonal-detector null", orthogonal_null},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string{"exception: "} + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !outcome.pass;
        std::printf("criterion %2zu %s  %s: %s [%.1fs]\n", i + 1, outcome.pass ? "PASS" : "FAIL", criteria[i].first,
                    outcome.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
