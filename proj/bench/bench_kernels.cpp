// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS set to compare
// thread counts; the serial variants ignore it.

#include "quoherence/coherence.hpp"
#include "quoherence/fringe.hpp"
#include "quoherence/kernels.hpp"
#include "quoherence/sampling.hpp"

#include <benchmark/benchmark.h>

using namespace quoherence;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

SlitGeometry geometry(int n) {
    SlitGeometry g;
    g.n = n;
    return g;
}

void BM_ExactPattern(benchmark::State& state) {
    const int n = static_cast<int>(state.range(1));
    const auto g = geometry(n);
    const auto grid = ScreenGrid::default_for(g);
    const QuantonState s = QuantonPureState::equal(n);
    const auto det = DetectorGram::uniform(n, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_pattern(PatternKind::exact, g, s, det, grid, exec_of(state)));
    }
    state.SetItemsProcessed(state.iterations() * grid.num_points);
}
BENCHMARK(BM_ExactPattern)->ArgsProduct({{0, 1}, {3, 8}})->ArgNames({"parallel", "n"});

void BM_FarfieldPattern(benchmark::State& state) {
    const auto g = geometry(6);
    const ScreenGrid grid{-0.05, 0.05, static_cast<int>(state.range(1))};
    const FarfieldModel model{g, reduced_density(QuantonPureState::equal(6), DetectorGram::uniform(6, 0.3)).matrix()};
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_farfield(model, grid, PatternKind::farfield, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * grid.num_points);
}
BENCHMARK(BM_FarfieldPattern)->ArgsProduct({{0, 1}, {4001, 100001}})->ArgNames({"parallel", "points"});

void BM_SampleCdf(benchmark::State& state) {
    const auto g = geometry(3);
    const auto grid = ScreenGrid::default_for(g);
    const auto pattern = evaluate_pattern(PatternKind::farfield, g, QuantonPureState::equal(3),
                                          DetectorGram::uniform(3, 0.5), grid, Exec::serial);
    const PiecewiseLinearCdf cdf{pattern, grid.span()};
    const auto photons = static_cast<std::uint64_t>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_cdf(cdf, photons, 1, Stream::coherent, 16, exec_of(state)));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(photons));
}
BENCHMARK(BM_SampleCdf)->ArgsProduct({{0, 1}, {1'000'000}})->ArgNames({"parallel", "photons"})->Unit(benchmark::kMillisecond);

void BM_PhaseRandomized(benchmark::State& state) {
    const auto g = geometry(3);
    const auto grid = ScreenGrid::default_for(g);
    const CMatrix rho = reduced_density(QuantonPureState::equal(3), DetectorGram::uniform(3, 0.5)).matrix();
    const auto inc = evaluate_farfield(FarfieldModel{g, rho}, grid, PatternKind::incoherent, Exec::serial);
    const PiecewiseLinearCdf cdf{inc, grid.span()};
    const auto photons = static_cast<std::uint64_t>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sample_phase_randomized(rho, g, cdf, photons, 1, Stream::incoherent, 16, exec_of(state)));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(photons));
}
BENCHMARK(BM_PhaseRandomized)->ArgsProduct({{0, 1}, {1'000'000}})->ArgNames({"parallel", "photons"})->Unit(benchmark::kMillisecond);

void BM_BinHits(benchmark::State& state) {
    const ScreenGrid grid{-1.0, 1.0, 101};
    const PatternSample flat{grid, std::vector<double>(101, 1.0), PatternKind::farfield};
    const auto hits = sample_cdf(PiecewiseLinearCdf{flat, grid.span()}, 4'000'000, 3, Stream::coherent, 16,
                                 Exec::serial);
    for (auto _ : state) benchmark::DoNotOptimize(bin_hits(hits, {-0.5, 0.5}, 100, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(hits.size()));
}
BENCHMARK(BM_BinHits)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
