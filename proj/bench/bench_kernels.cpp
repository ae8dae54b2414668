#include <benchmark/benchmark.h>

#include "spt/boundary_chain.hpp"
#include "spt/patch.hpp"

using namespace spt;

namespace {

// Z12 with the level-5 representative: 12^4 quadruples per scan.
void BM_CheckCocycle(benchmark::State &state) {
    const auto omega = standard_cyclic_cocycle(12, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(state.range(0) ? check_cocycle(omega) : check_cocycle_serial(omega));
}

// One upsilon on a Z4 chain of length 8: 4^9 configurations.
void BM_Classify(benchmark::State &state) {
    const auto omega = standard_cyclic_cocycle(4, 1);
    const auto fam = build_compensators(omega, RegisterChain(omega.group_ref(), 8));
    const auto ups = build_upsilon(fam, 1, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(state.range(0) ? classify(ups) : classify_serial(ups));
}

// Compensated symmetry on a Z3 3x3 torus: 3^9 sparse terms.
void BM_SparseExpectation(benchmark::State &state) {
    const auto omega = standard_cyclic_cocycle(3, 1);
    PatchGeometry geom(3, 3, BoundaryCondition::torus, parse_link_assignment("mirrored/-x"));
    const auto psi = build_patch_state(omega.group_ref(), geom);
    const auto u = compensated_symmetry(omega, geom, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(state.range(0) ? sparse_expectation(psi, u) : sparse_expectation_serial(psi, u));
}

// Same operator family on the 6x4 torus, where only the light-cone method fits.
void BM_LightCone(benchmark::State &state) {
    const auto omega = standard_cyclic_cocycle(3, 1);
    PatchGeometry geom(6, 4, BoundaryCondition::torus, parse_link_assignment("mirrored/-x"));
    const auto u = compensated_symmetry(omega, geom, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(state.range(0) ? light_cone_expectation(u, geom)
                                                : light_cone_expectation_serial(u, geom));
}

} // namespace

BENCHMARK(BM_CheckCocycle)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Classify)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SparseExpectation)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LightCone)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
