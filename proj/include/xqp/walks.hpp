#pragma once

#include <vector>

#include <Eigen/Dense>

#include "xqp/circuit.hpp"
#include "xqp/schur.hpp"

namespace xqp {

enum class WalkRoute {
    Direct,     ///< ones moved straight to their targets
    Canonical,  ///< through 0^{n-k} 1^k
};

/// Sequence of adjacent transpositions t (swapping positions t and t+1) that
/// turns `from` into `to` through valid symbols. Throws InvalidArgument for
/// symbols of different length or spin.
std::vector<int> yamanouchi_walk(const YamanouchiSymbol& from, const YamanouchiSymbol& to,
                                 WalkRoute route = WalkRoute::Direct);

/// Axial distance c_{t+1} - c_t of Y at positions (t, t+1).
int axial_distance(const YamanouchiSymbol& y, int t);

YamanouchiSymbol swap_positions(const YamanouchiSymbol& y, int t);

/// H = (|D| / sqrt(D^2 - 1)) (E_{t,t+1} - (X_{t+1} - X_t) / D^2) on V_J, D the
/// axial distance of y at t. Acts as Pauli X on {|Y>, |(t,t+1)Y>}.
Eigen::MatrixXd walk_hamiltonian(int t, const YamanouchiSymbol& y, const IrrepMatrixSet& rep);

struct WalkStep {
    Eigen::MatrixXcd sigma;   ///< exp(i pi/2 H) on V_J
    cplx phase;               ///< <(t,t+1)Y| sigma |Y>
    int axial_distance = 0;
    YamanouchiSymbol next;
};

/// Exact exp(i pi/2 H) via eigendecomposition of each connected block of H.
/// Throws DegenerateAxialDistance when |D| = 1 and InvalidArgument when the
/// swapped symbol is not valid.
WalkStep walk_unitary(int t, const YamanouchiSymbol& y, const IrrepMatrixSet& rep);

/// First-order Trotter rendering of exp(i pi/2 H) as exchange pulses on the
/// physical qubits, using X_{t+1} - X_t = E_{t,t+1} + sum_{j<t}(E_{j,t+1} - E_{j,t}).
std::vector<GateEvent> walk_trotter_pulses(int t, const YamanouchiSymbol& y, int steps);

/// |<sigma Y | pulses Y>|^2 evaluated in the Young-orthogonal representation.
double walk_trotter_fidelity(int t, const YamanouchiSymbol& y, const IrrepMatrixSet& rep, int steps);

/// Smallest power-of-two step count whose Trotter infidelity is <= target.
int walk_trotter_steps(int t, const YamanouchiSymbol& y, const IrrepMatrixSet& rep, double target = 1e-3);

/// A full walk with per-step diagnostics and its pulse rendering.
struct WalkPlan {
    std::vector<int> steps;
    std::vector<YamanouchiSymbol> symbols;  ///< symbols.size() == steps.size() + 1
    std::vector<int> axial_distances;
    std::vector<cplx> phases;
    std::vector<int> trotter_steps;
    std::vector<GateEvent> pulses;
};

/// Plans the walk and renders every sigma with the smallest power-of-two
/// step count reaching `trotter_target` infidelity.
WalkPlan plan_walk(const YamanouchiSymbol& from, const YamanouchiSymbol& to,
                   WalkRoute route = WalkRoute::Direct, double trotter_target = 1e-3);

/// The inverse pulse sequence (reversed, angles negated).
std::vector<GateEvent> inverse_pulses(const std::vector<GateEvent>& pulses);

}  // namespace xqp
