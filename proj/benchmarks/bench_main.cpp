#include "hmfa/discrepancy.hpp"
#include "hmfa/generators.hpp"
#include "hmfa/master_equation.hpp"
#include "hmfa/meanfield.hpp"
#include "hmfa/simulation.hpp"
#include "hmfa/spectral.hpp"

#include <benchmark/benchmark.h>

using namespace hmfa;

namespace {

ModelSpec sis() { return make_model(ModelKind::sis, {{"beta", 2.0}, {"gamma", 1.0}}); }

StateAssignment half_infected(std::size_t n)
{
    StateAssignment xi(n, 2, 0);
    for (Vertex v = 0; v < n; v += 2)
        xi.set(v, 1);
    return xi;
}

// Exhaustive sweep cost grows as 2^n * n.
void brute_force_sweep(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const Graph g = erdos_renyi(n, 0.3, 1).graph;
    DiscrepancySelection which{};
    which.del_1 = which.del_2 = false;
    for (auto _ : state)
        benchmark::DoNotOptimize(brute_force_discrepancies(g, which).del_max->value);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(brute_force_sweep)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);

void simulate_sis(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const Graph g = erdos_renyi(n, 16.0 / static_cast<double>(n - 1), 2).graph;
    const ModelSpec m = sis();
    const auto init = half_infected(n);
    std::uint64_t seed = 0, events = 0;
    for (auto _ : state) {
        Simulator sim(g, m, init, ++seed);
        sim.advance_to(2.0);
        events += sim.events();
    }
    state.counters["events/s"] = benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(simulate_sis)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMillisecond);

void spectral_dense(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const Graph g = erdos_renyi(n, 16.0 / static_cast<double>(n - 1), 3).graph;
    SpectralOptions o;
    o.force_method = EigenMethod::dense_full;
    for (auto _ : state)
        benchmark::DoNotOptimize(spectral_report(g, std::nullopt, o).lambda_second);
}
BENCHMARK(spectral_dense)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void spectral_iterative(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const Graph g = erdos_renyi(n, 16.0 / static_cast<double>(n - 1), 3).graph;
    SpectralOptions o;
    o.force_method = EigenMethod::iterative;
    for (auto _ : state)
        benchmark::DoNotOptimize(spectral_report(g, std::nullopt, o).lambda_second);
}
BENCHMARK(spectral_iterative)->Arg(800)->Arg(4096)->Unit(benchmark::kMillisecond);

void master_equation_sir(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const Graph g = erdos_renyi(n, 0.4, 4).graph;
    const ModelSpec m = make_model(ModelKind::sir, {{"beta", 2.0}, {"gamma", 1.0}});
    StateAssignment init(n, 3, 0);
    init.set(0, 1);
    MasterEquationOptions o;
    o.state_cap = 59049;
    for (auto _ : state)
        benchmark::DoNotOptimize(master_equation(g, m, init, 3.0, 0.05, o).mean.xbar.back());
}
BENCHMARK(master_equation_sir)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

void hmfa_ode(benchmark::State& state)
{
    const ModelSpec m = sis();
    const std::vector<double> u0{0.9, 0.1};
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_hmfa(m, u0, 10.0, 0.01).u.back());
}
BENCHMARK(hmfa_ode)->Unit(benchmark::kMicrosecond);

} // namespace
BENCHMARK_MAIN();
