#include "sphroots/engine.hpp"
#include "sphroots/subgroup.hpp"

#include <benchmark/benchmark.h>

using namespace sphroots;

namespace {

SphericalDatum make_datum(const std::string& type, std::vector<int> levi1,
                          std::vector<IVec> psi_reps,
                          std::vector<std::pair<int, int>> xi_diffs = {}) {
    RootSystemPtr rs = RootSystem::build(DynkinType::parse(type));
    std::vector<int> levi;
    for (int i : levi1) levi.push_back(i - 1);
    LeviDatum ld(rs, levi);
    std::vector<CWeight> psi;
    for (const IVec& v : psi_reps) psi.push_back(ld.restrict(v));
    std::vector<QVec> gens;
    for (auto [i, j] : xi_diffs) gens.push_back(ld.xc_coords(psi[i - 1] - psi[j - 1]));
    Sublattice xi = Sublattice::from_generators(ld.xc_rank(), gens).saturate();
    return SphericalDatum(std::move(ld), std::move(xi), std::move(psi));
}

SphericalDatum example3() {
    return make_datum("A6", {1, 4},
                      {{1, 1, 0, 0, 0, 0}, {1, 1, 1, 1, 1, 1},
                       {0, 0, 0, 1, 1, 1}, {0, 0, 0, 0, 0, 1}});
}

// A strongly solvable A4 datum with all simple roots active: the base
// recursion branches maximally and leans on memoization.
SphericalDatum solvable_a4() {
    return make_datum("A4", {},
                      {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
}

} // namespace

static void BM_BuildRootSystem(benchmark::State& state) {
    for (auto _ : state) {
        auto rs = RootSystem::build(DynkinType::parse("E8"));
        benchmark::DoNotOptimize(rs->positive_roots().size());
    }
}
BENCHMARK(BM_BuildRootSystem);

static void BM_Validate(benchmark::State& state) {
    SphericalDatum d = example3();
    for (auto _ : state) {
        auto rep = validate(d);
        benchmark::DoNotOptimize(rep.ok());
    }
}
BENCHMARK(BM_Validate);

static void BM_WeightLattice(benchmark::State& state) {
    SphericalDatum d = example3();
    for (auto _ : state) {
        auto lam = weight_lattice(d);
        benchmark::DoNotOptimize(lam.rank());
    }
}
BENCHMARK(BM_WeightLattice);

static void BM_BaseSolve(benchmark::State& state) {
    SphericalDatum d = example3();
    for (auto _ : state) {
        auto r = base_solve(d);
        benchmark::DoNotOptimize(r.rays.size());
    }
}
BENCHMARK(BM_BaseSolve);

static void BM_OptimizedSolve(benchmark::State& state) {
    SphericalDatum d = example3();
    for (auto _ : state) {
        auto r = optimized_solve(d);
        benchmark::DoNotOptimize(r.rays.size());
    }
}
BENCHMARK(BM_OptimizedSolve);

static void BM_BaseSolveSolvable(benchmark::State& state) {
    SphericalDatum d = solvable_a4();
    for (auto _ : state) {
        auto r = base_solve(d);
        benchmark::DoNotOptimize(r.rays.size());
    }
}
BENCHMARK(BM_BaseSolveSolvable);

static void BM_OptimizedSolveSolvable(benchmark::State& state) {
    SphericalDatum d = solvable_a4();
    for (auto _ : state) {
        auto r = optimized_solve(d);
        benchmark::DoNotOptimize(r.rays.size());
    }
}
BENCHMARK(BM_OptimizedSolveSolvable);

BENCHMARK_MAIN();
