#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "xqp/entanglement.hpp"
#include "xqp/potts.hpp"
#include "xqp/sector.hpp"
#include "xqp/simulate.hpp"
#include "xqp/vertex.hpp"

using namespace xqp;
using std::numbers::pi;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(1) ? Exec::Parallel : Exec::Serial; }

// Random-ish dense vector in the half-filling sector of n qubits.
SectorState half_filled(int n) {
    SectorState s(n, n / 2);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    for (auto& a : s.amplitudes()) a = cplx(g(rng), g(rng));
    return s;
}

Circuit quarter_circuit(int n, int factors) {
    std::vector<GateEvent> ev;
    for (int k = 0; k < factors; ++k) {
        const int i = k % n;
        ev.push_back(GateEvent::exchange(i, (i + 1 + (k / n) % (n - 1)) % n, pi / 4));
    }
    return make_circuit(BasisState(n, (std::uint64_t{1} << (n / 2)) - 1), std::move(ev));
}

void BM_Exchange(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    SectorState s = half_filled(n);
    for (auto _ : st) {
        if (exec_of(st) == Exec::Parallel)
            kernels::exchange_parallel(s, 0, n - 1, 0.3);
        else
            kernels::exchange_serial(s, 0, n - 1, 0.3);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_Exchange)->ArgsProduct({{16, 20, 24}, {0, 1}})->Unit(benchmark::kMicrosecond);

void BM_PathSum(benchmark::State& st) {
    const int factors = static_cast<int>(st.range(0));
    const Circuit c = quarter_circuit(8, factors);
    const BasisState out = c.input.base;
    for (auto _ : st) benchmark::DoNotOptimize(amplitude_path_sum(c, out, 26, exec_of(st)));
}
BENCHMARK(BM_PathSum)->ArgsProduct({{16, 20}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_VertexBruteforce(benchmark::State& st) {
    const int gates = static_cast<int>(st.range(0));
    std::vector<GateEvent> ev;
    for (int k = 0; k < gates; ++k) ev.push_back(GateEvent::exchange(k % 5, k % 5 + 1, 0.1 * (k + 1)));
    const Circuit c = make_circuit(BasisState::from_string("000111"), std::move(ev));
    const VertexLattice l = circuit_to_lattice(c, c.input.base, BasisState::from_string("010101"));
    for (auto _ : st) benchmark::DoNotOptimize(partition_bruteforce(l, 26, exec_of(st)));
}
BENCHMARK(BM_VertexBruteforce)->ArgsProduct({{14, 20}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_FortuinKasteleyn(benchmark::State& st) {
    const int w = static_cast<int>(st.range(0));
    const PottsLattice p = PottsLattice::from_angles(w, 3, 0.4, 0.9, true);
    for (auto _ : st) benchmark::DoNotOptimize(potts_fk_bruteforce(p, 4.0, 24, exec_of(st)));
}
BENCHMARK(BM_FortuinKasteleyn)->ArgsProduct({{3, 4}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_EntanglingPowerMC(benchmark::State& st) {
    const TwoQubitGate u = TwoQubitGate::exchange(pi / 4);
    const auto samples = static_cast<std::uint64_t>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(entangling_power_mc(u, samples, 7, exec_of(st)).mean);
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(samples));
}
BENCHMARK(BM_EntanglingPowerMC)->ArgsProduct({{100000}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
