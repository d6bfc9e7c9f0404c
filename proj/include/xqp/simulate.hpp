#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "xqp/circuit.hpp"
#include "xqp/sector.hpp"

namespace xqp {

/// Initial state described by a circuit's input preparation.
MultiSectorState prepare_input(const Circuit& c);

struct RunResult {
    MultiSectorState state;
    /// Product of all postselection probabilities (1 when there are none).
    double success_probability = 1.0;
    /// Probability of each Postselect event, in circuit order.
    std::vector<double> postselect_probabilities;
};

/// Applies the events of `c` to its prepared input.
/// PostselectionImpossible carries the offending event index.
RunResult run_circuit(const Circuit& c, Exec exec = Exec::Parallel);

/// Applies the events of `c` to an explicit initial state.
RunResult run_events(const MultiSectorState& initial, const std::vector<GateEvent>& events,
                     Exec exec = Exec::Parallel);

/// Exact <out|U|in> for a circuit without postselection.
/// Throws UnsupportedEvent when a Postselect event is present.
cplx amplitude(const Circuit& c, const BasisState& out, Exec exec = Exec::Parallel);

/// Default and configurable cap on the number of sqrt(SWAP) factors.
inline constexpr int kDefaultPathSumCap = 26;

/// Brute-force path-sum oracle for XQP(pi/4) circuits: every Exchange angle
/// k pi/4 contributes (k mod 8) factors (1 + i SWAP)/sqrt2, and the amplitude is
/// 2^{-N/2} sum over subsets p of i^{|p|} [product of the chosen swaps maps in
/// to out]. Accumulation uses exact integer counts per power of i.
cplx amplitude_path_sum(const Circuit& c, const BasisState& out, int cap = kDefaultPathSumCap,
                        Exec exec = Exec::Parallel);

/// Number of sqrt(SWAP) factors in an XQP(pi/4) circuit.
int sqrt_swap_factor_count(const Circuit& c);

struct Histogram {
    std::uint64_t shots = 0;
    /// Qubits reported in each bitstring, in order.
    std::vector<int> qubits;
    std::map<std::string, std::uint64_t> counts;

    double frequency(const std::string& key) const;
    std::string to_csv() const;
};

/// Output probabilities of the final state over the reported qubits
/// (MEAS-recorded qubits in record order, otherwise all qubits).
std::map<std::string, double> output_distribution(const Circuit& c, Exec exec = Exec::Parallel);

/// I.i.d. samples from the final state conditioned on every postselection
/// succeeding. Deterministic for a fixed seed.
Histogram sample_outputs(const Circuit& c, std::uint64_t shots, std::uint64_t seed,
                         Exec exec = Exec::Parallel);

/// Total variation distance between two histograms' empirical frequencies.
double total_variation(const Histogram& a, const Histogram& b);

}  // namespace xqp
