// Microbenchmarks for the hot paths: jump-chain stepping, the explicit
// solver, and the energy functionals.  Throughput is what matters for the
// hydrodynamic runs, so the counters report events / cell-updates per second.
#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "pmm/energy.hpp"
#include "pmm/kmc.hpp"
#include "pmm/profiles.hpp"
#include "pmm/solver.hpp"

using namespace pmm;

namespace {

ModelParams lattice_params(int n) {
    ModelParams p;
    p.n = n;
    p.m = 2;
    p.kappa = 1.0;
    p.theta = 1.0;
    p.a = 1.5;
    p.alpha = 0.2;
    p.beta = 0.8;
    p.T = 1e9; // irrelevant: the benchmark steps the chain directly
    return p.checked();
}

void bm_kmc_step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(20250817);
    Simulator sim(sample_product(lattice_params(n), Topology::Interval, make_profile("linear:0.2,0.8"), rng));
    for (auto _ : state) benchmark::DoNotOptimize(sim.step(rng));
    state.SetItemsProcessed(state.iterations());
}

void bm_solver(benchmark::State& state) {
    const int cells = static_cast<int>(state.range(0));
    ModelParams p;
    p.m = 2;
    p.kappa = 1.0;
    p.alpha = 0.2;
    p.beta = 0.8;
    p.T = 0.01;
    const Profile g = make_profile("linear:0.2,0.8");
    SolveOptions opt;
    opt.cells = cells;
    opt.stored_steps = 4;
    double du = 1.0 / cells;
    double steps = std::ceil(p.T / (opt.cfl * du * du / (2 * p.m)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_pme(g, p, {BcKind::Robin, 1.0}, opt));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(steps) * cells);
}

SpaceTimeField energy_fixture() {
    ModelParams p;
    p.m = 2;
    p.kappa = 1.0;
    p.alpha = 0.2;
    p.beta = 0.8;
    p.T = 0.5;
    SolveOptions opt;
    opt.cells = 200;
    opt.stored_steps = 100;
    return solve_pme(make_profile("linear:0.2,0.8"), p, {BcKind::Robin, 1.0}, opt);
}

void bm_energy_dual(benchmark::State& state) {
    SpaceTimeField xi = energy_fixture();
    EnergyParams ep = EnergyParams::from(xi.params);
    for (auto _ : state) benchmark::DoNotOptimize(energy_dual(xi, ep));
}

void bm_energy_sup(benchmark::State& state) {
    SpaceTimeField xi = energy_fixture();
    EnergyParams ep = EnergyParams::from(xi.params);
    std::vector<FieldView> dict = standard_dictionary(xi, 8, 2);
    dict.push_back(gradient_direction(xi, ep.m));
    for (auto _ : state) benchmark::DoNotOptimize(energy_sup_estimate(xi, ep, dict));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(dict.size()));
}

} // namespace

BENCHMARK(bm_kmc_step)->Arg(100)->Arg(200);
BENCHMARK(bm_solver)->Arg(100)->Arg(200);
BENCHMARK(bm_energy_dual);
BENCHMARK(bm_energy_sup);

BENCHMARK_MAIN();
