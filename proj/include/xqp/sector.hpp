#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "xqp/basis.hpp"
#include "xqp/parallel.hpp"

namespace xqp {

using cplx = std::complex<double>;

/// Ranked list of all weight-k strings of length n, shared between states.
struct SectorIndex {
    int n = 0;
    int weight = 0;
    std::vector<std::uint64_t> strings;

    std::size_t size() const { return strings.size(); }
    std::uint64_t rank(std::uint64_t bits) const { return rank_fixed_weight(bits); }

    /// Cached, thread-safe lookup. Throws SectorTooLarge above the size cap.
    static std::shared_ptr<const SectorIndex> get(int n, int weight);
};

/// Largest sector dimension the simulator will allocate.
std::size_t sector_size_cap();
void set_sector_size_cap(std::size_t cap);

/// A statevector restricted to one Hamming-weight sector of n qubits.
///
/// Amplitudes are stored densely, indexed by the lexicographic rank of the
/// weight-k bitstring. `norm_tracked` is the cumulative probability of all
/// postselections applied so far; the amplitudes themselves stay normalized.
class SectorState {
public:
    SectorState() = default;
    SectorState(int n, int weight);

    static SectorState basis(const BasisState& x);

    int n() const { return index_->n; }
    int weight() const { return index_->weight; }
    std::size_t size() const { return amps_.size(); }
    const SectorIndex& index() const { return *index_; }

    std::vector<cplx>& amplitudes() { return amps_; }
    const std::vector<cplx>& amplitudes() const { return amps_; }

    cplx amplitude(const BasisState& x) const;
    cplx& at(const BasisState& x);

    double squared_norm() const;
    double norm_tracked() const { return norm_tracked_; }
    void set_norm_tracked(double v) { norm_tracked_ = v; }

private:
    std::shared_ptr<const SectorIndex> index_;
    std::vector<cplx> amps_;
    double norm_tracked_ = 1.0;
};

/// A pure state that may have support on several Hamming-weight sectors.
class MultiSectorState {
public:
    MultiSectorState() = default;
    explicit MultiSectorState(int n) : n_(n) {}

    static MultiSectorState basis(const BasisState& x);

    /// Builds a state from a dense 2^n vector (index = packed bits); zero
    /// sectors are dropped.
    static MultiSectorState from_dense(int n, const std::vector<cplx>& dense);

    int n() const { return n_; }
    std::map<int, SectorState>& sectors() { return sectors_; }
    const std::map<int, SectorState>& sectors() const { return sectors_; }

    /// Sector of the given weight, created empty when absent.
    SectorState& sector(int weight);

    cplx amplitude(const BasisState& x) const;
    double squared_norm() const;
    std::vector<cplx> to_dense() const;

    /// Cumulative postselection probability.
    double norm_tracked() const { return norm_tracked_; }
    void set_norm_tracked(double v);

private:
    int n_ = 0;
    std::map<int, SectorState> sectors_;
    double norm_tracked_ = 1.0;
};

/// <a|b>, summed over the sectors both states share.
cplx inner_product(const MultiSectorState& a, const MultiSectorState& b);

/// |<a|b>|^2 / (|a|^2 |b|^2).
double fidelity(const MultiSectorState& a, const MultiSectorState& b);

// Value-semantics operations; each returns a new state.

/// Applies U(theta) = cos(theta) 1 + i sin(theta) SWAP to qubits (i, j).
SectorState apply_exchange(const SectorState& s, int i, int j, double theta,
                           Exec exec = Exec::Parallel);
MultiSectorState apply_exchange(const MultiSectorState& s, int i, int j, double theta,
                                Exec exec = Exec::Parallel);

/// Applies S = diag(1, i), or S^dagger when `dagger`, to qubit i.
MultiSectorState apply_s(const MultiSectorState& s, int i, bool dagger);

struct PostselectResult {
    MultiSectorState state;
    double probability = 0;
};

/// Projects qubit i onto |bit>, renormalizes, and multiplies norm_tracked by
/// the outcome probability. The qubit stays in the register.
/// Throws PostselectionImpossible when the probability is below 1e-14.
PostselectResult postselect(const MultiSectorState& s, int i, int bit);

namespace kernels {

// In-place kernels used by the circuit runner and the benchmark.
void exchange_serial(SectorState& s, int i, int j, double theta);
void exchange_parallel(SectorState& s, int i, int j, double theta);
void phase_on_one(SectorState& s, int i, cplx phase);
/// Zeroes amplitudes whose qubit i differs from bit; returns the kept mass.
double project(SectorState& s, int i, int bit);

}  // namespace kernels

}  // namespace xqp
