#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "xqp/circuit.hpp"
#include "xqp/parallel.hpp"
#include "xqp/sector.hpp"

namespace xqp {

/// A w x h square lattice (sites r*w + c) with horizontal and vertical
/// couplings v = e^K - 1, optionally periodic along rows.
struct PottsLattice {
    int w = 0;
    int h = 0;
    cplx v_h = 0;
    cplx v_v = 0;
    bool periodic_h = false;

    struct Edge {
        int a, b;
        bool horizontal;
    };

    static PottsLattice from_couplings(int w, int h, cplx k_h, cplx k_v, bool periodic_h = false);
    /// v_h = e^{-2i theta_h} - 1, v_v = 2i cot(theta_v) - 2.
    static PottsLattice from_angles(int w, int h, double theta_h, double theta_v, bool periodic_h = false);

    int sites() const { return w * h; }
    /// Horizontal edges row by row (the wrap edge (r w + w - 1, r w) last in
    /// each row when periodic), then vertical edges.
    std::vector<Edge> edges() const;
};

inline constexpr int kDefaultPottsEdgeCap = 24;

/// sum over edge subsets G of q^{C(G)} v_h^{|G_h|} v_v^{|G_v|}; isolated sites
/// count as components. Throws CapExceeded above `cap` edges.
cplx potts_fk_bruteforce(const PottsLattice& p, cplx q, int cap = kDefaultPottsEdgeCap,
                         Exec exec = Exec::Parallel);

/// sum over spin assignments of prod_edges (1 + v delta(s_a, s_b)); throws
/// CapExceeded when q^sites > 1e7.
cplx potts_spin_sum(const PottsLattice& p, int q);

struct PottsCircuit {
    Circuit circuit;          ///< XQP+S circuit on 2w qubits from |0101...>
    BasisState output;        ///< |0101...>, so amplitude = <S|^w U |S>^w
    cplx prefactor;           ///< (-2)^{N+w} / ((i sin theta_v)^{N_v} e^{i N_h theta_h})
    int n_h = 0;
    int n_v = 0;
    PottsLattice lattice;     ///< the q = 4 lattice the amplitude encodes
};

/// Singlet layers S(2k) U_{2k,2k+1}(pi/4) around alternating layers of
/// U(theta_h) on (2k+1, 2k+2) and U(theta_v) on (2k, 2k+1). Periodic rows add
/// U(theta_h) on (2w-1, 0), either directly or through a SWAP network of
/// U(+-pi/2) gates. Throws InvalidArgument when sin(theta_v) = 0 or x_h = x_v.
PottsCircuit potts_circuit(int w, int h, double theta_h, double theta_v, bool periodic_h = false,
                           bool swap_network = false);

/// prefactor * amplitude of the circuit.
cplx potts_from_circuit(const PottsCircuit& pc, Exec exec = Exec::Parallel);

/// Weight tables of the modified six-vertex model before and after the s^{+-2}
/// redistribution, with x = -v/2.
struct PottsWeightChain {
    cplx s, x_h, x_v;
    cplx a_h, b_h, c1_h, c2_h;          ///< raw horizontal
    cplx a_v, b_v, c1_v, c2_v;          ///< raw vertical
    cplx c1_h_mod, c2_h_mod, c1_v_mod, c2_v_mod;
    cplx anisotropy_h, anisotropy_v;   ///< of the redistributed weights
};
PottsWeightChain potts_weight_chain(double theta_h, double theta_v);

}  // namespace xqp
