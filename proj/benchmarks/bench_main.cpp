#include <benchmark/benchmark.h>

#include "etherphase/fixtures.hpp"
#include "etherphase/phase_maps.hpp"
#include "etherphase/phase_product.hpp"

using namespace etherphase;

namespace {
Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}
}  // namespace

static void BM_ReflectionIntegrated(benchmark::State& state) {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    Vec x = v2(0.4, -0.2), z = v2(-0.3, 0.5);
    CurveFn path = segment_curve(z, x);
    for (auto _ : state) benchmark::DoNotOptimize(reflection_along(E, path, z));
}
BENCHMARK(BM_ReflectionIntegrated);

static void BM_ReflectionSphere(benchmark::State& state) {
    EtherStructure E = make_fixture("sphere_chart", {});
    Vec x = v2(0.2, -0.1), z = v2(-0.1, 0.25);
    for (auto _ : state) benchmark::DoNotOptimize(reflection(E, x, z));
}
BENCHMARK(BM_ReflectionSphere);

static void BM_MembranePhase(benchmark::State& state) {
    EtherStructure E = make_fixture("darboux_pullback", {});
    HamiltonianSystem osc{[](const Vec& z) { return 0.5 * z.squaredNorm(); },
                          [](const Vec& z) { return z; }};
    SymplecticMap g = flow_map(osc, E.fix, 0.3);
    Vec x = v2(0.4, 0.1), y = v2(-0.2, 0.3);
    for (auto _ : state) benchmark::DoNotOptimize(normalized_phase(E, g, x, y));
}
BENCHMARK(BM_MembranePhase);

static void BM_FixedMidpointNewton(benchmark::State& state) {
    EtherStructure E = make_fixture("darboux_pullback", {});
    HamiltonianSystem osc{[](const Vec& z) { return 0.5 * z.squaredNorm(); },
                          [](const Vec& z) { return z; }};
    SymplecticMap g = flow_map(osc, E.fix, 0.3);
    Vec x = v2(0.4, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(fixed_midpoint(E, g, x));
}
BENCHMARK(BM_FixedMidpointNewton);

static void BM_PhaseProduct(benchmark::State& state) {
    EtherStructure E = make_fixture("euclid_weyl_2n", {});
    PhaseFunction p1 = linear_phase(v2(0, 0.1));
    PhaseFunction p2 = linear_phase(v2(-0.1, 0.05));
    Vec x = v2(0.3, 0.2);
    for (auto _ : state) benchmark::DoNotOptimize(phase_product(E, p2, p1, x));
}
BENCHMARK(BM_PhaseProduct);

BENCHMARK_MAIN();
