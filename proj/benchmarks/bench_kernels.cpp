// Serial-versus-OpenMP timings for the two data-parallel kernels: the
// incremental-minimization objective fill and the level-set step.
#include <benchmark/benchmark.h>

#include "rievolve/energy.hpp"
#include "rievolve/ode.hpp"
#include "rievolve/pde.hpp"

using namespace rievolve;

static void bm_mm_fill_serial(benchmark::State& state) {
    EnergyLandscape land = EnergyLandscape::cubic_paper();
    MMScanWorkspace ws = build_mm_workspace(land, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        kernels::mm_objective_fill_serial(ws.q, ws.energy, 2.0, 0.3, ws.phi);
        benchmark::DoNotOptimize(ws.phi.data());
        benchmark::ClobberMemory();
    }
}
BENCHMARK(bm_mm_fill_serial)->Arg(20001)->Arg(200001);

static void bm_mm_fill_omp(benchmark::State& state) {
    EnergyLandscape land = EnergyLandscape::cubic_paper();
    MMScanWorkspace ws = build_mm_workspace(land, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        kernels::mm_objective_fill_omp(ws.q, ws.energy, 2.0, 0.3, ws.phi);
        benchmark::DoNotOptimize(ws.phi.data());
        benchmark::ClobberMemory();
    }
}
BENCHMARK(bm_mm_fill_omp)->Arg(20001)->Arg(200001);

namespace {

Field mcf_field(std::size_t n) {
    Grid g = Grid::centered(2, n, 3.0);
    return Field::from_function(g, [](double x, double y) { return x * x + y * y - 4.0; });
}

PDEScenario mcf_scenario() {
    PDEScenario sc;
    sc.kind = ScenarioKind::levelset_mcf;
    sc.dissipation = DissipationMap::sign_subdifferential();
    sc.reg_eps = 0.05;
    return sc;
}

} // namespace

static void bm_pde_step_serial(benchmark::State& state) {
    Field u = mcf_field(static_cast<std::size_t>(state.range(0)));
    PDEScenario sc = mcf_scenario();
    for (auto _ : state) {
        Field next = pde_step_serial(sc, u, 0.0);
        benchmark::DoNotOptimize(next.values.data());
    }
}
BENCHMARK(bm_pde_step_serial)->Arg(128)->Arg(256);

static void bm_pde_step_omp(benchmark::State& state) {
    Field u = mcf_field(static_cast<std::size_t>(state.range(0)));
    PDEScenario sc = mcf_scenario();
    for (auto _ : state) {
        Field next = pde_step(sc, u, 0.0);
        benchmark::DoNotOptimize(next.values.data());
    }
}
BENCHMARK(bm_pde_step_omp)->Arg(128)->Arg(256);

BENCHMARK_MAIN();
