// Microbenchmarks for the hot paths: gate kernels, Trotter steps, the dense
// solvers, graph generation, and an end-to-end HHL solve.

#include <benchmark/benchmark.h>

#include "qtutte/classical.hpp"
#include "qtutte/generators.hpp"
#include "qtutte/hamiltonian.hpp"
#include "qtutte/hhl.hpp"
#include "qtutte/pipeline.hpp"
#include "qtutte/statevector.hpp"
#include "qtutte/tutte.hpp"

namespace {

using namespace qtutte;

void bm_gate_h(benchmark::State& state) {
    const std::size_t qubits = static_cast<std::size_t>(state.range(0));
    StateVector sv(qubits);
    std::size_t q = 0;
    for (auto _ : state) {
        sv = apply(sv, Gate::h(), {q});
        q = (q + 1) % qubits;
        benchmark::DoNotOptimize(sv.amplitudes().data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(sv.dimension()));
}
BENCHMARK(bm_gate_h)->Arg(10)->Arg(16)->Arg(20);

void bm_gate_cx(benchmark::State& state) {
    const std::size_t qubits = static_cast<std::size_t>(state.range(0));
    StateVector sv(qubits);
    for (std::size_t q = 0; q < qubits; ++q) sv = apply(sv, Gate::h(), {q});
    std::size_t q = 0;
    for (auto _ : state) {
        sv = apply(sv, Gate::cx(), {q, (q + 1) % qubits});
        q = (q + 1) % qubits;
        benchmark::DoNotOptimize(sv.amplitudes().data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(sv.dimension()));
}
BENCHMARK(bm_gate_cx)->Arg(10)->Arg(16)->Arg(20);

void bm_controlled_diag(benchmark::State& state) {
    const std::size_t qubits = static_cast<std::size_t>(state.range(0));
    StateVector sv(qubits);
    for (std::size_t q = 0; q < qubits; ++q) sv = apply(sv, Gate::h(), {q});
    const Gate g = Gate::controlled(Gate::diag({{1.0, 0.0}, {0.0, 1.0}}), {qubits - 1});
    for (auto _ : state) {
        sv = apply(sv, g, {0});
        benchmark::DoNotOptimize(sv.amplitudes().data());
    }
}
BENCHMARK(bm_controlled_diag)->Arg(12)->Arg(18);

void bm_trotter_step(benchmark::State& state) {
    Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
    TutteSystem sys = build_system(k3, PinSpec::soft_ground());
    TrotterPlan plan = trotter_plan(sys.a, sparsity_graph(sys.a), 1.0, 1e-2, CompileMode::strict);
    const std::vector<CircuitOp> ops = trotter_step_ops(plan, CompileMode::strict);
    StateVector sv(plan.register_qubits + plan.memory_qubits);
    for (auto _ : state) {
        for (const CircuitOp& op : ops) sv = apply(sv, op.gate, op.targets);
        benchmark::DoNotOptimize(sv.amplitudes().data());
    }
}
BENCHMARK(bm_trotter_step);

void bm_delaunay(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        DelaunayResult d = random_planar_delaunay(n, Seed{seed++});
        benchmark::DoNotOptimize(d.graph.edge_count());
    }
}
BENCHMARK(bm_delaunay)->Arg(16)->Arg(64)->Arg(256);

void bm_classical_solve(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    DelaunayResult d = random_planar_delaunay(n, Seed{7});
    DummyFaceResult aug = add_dummy_outer_face(d.graph, {0, 1, 2});
    TutteSystem sys = build_system(aug.graph, PinSpec::soft_ground());
    for (auto _ : state) {
        TutteSolution sol = solve(sys);
        benchmark::DoNotOptimize(sol.x.data());
    }
}
BENCHMARK(bm_classical_solve)->Arg(16)->Arg(64);

void bm_condition_number(benchmark::State& state) {
    DelaunayResult d = random_planar_delaunay(32, Seed{7});
    DummyFaceResult aug = add_dummy_outer_face(d.graph, {0, 1, 2});
    TutteSystem sys = build_system(aug.graph, PinSpec::soft_ground());
    for (auto _ : state) {
        benchmark::DoNotOptimize(condition_number(sys.a));
    }
}
BENCHMARK(bm_condition_number);

void bm_hhl_oracle(benchmark::State& state) {
    Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
    TutteSystem sys = build_system(k3, PinSpec::soft_ground());
    HhlConfig cfg;
    cfg.clock_qubits = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        HhlResult res = solve_hhl(sys, Axis::x, cfg);
        benchmark::DoNotOptimize(res.solution.data());
    }
}
BENCHMARK(bm_hhl_oracle)->Arg(6)->Arg(8)->Arg(10);

} // namespace

BENCHMARK_MAIN();
