#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xqp/circuit.hpp"
#include "xqp/parallel.hpp"
#include "xqp/sector.hpp"

namespace xqp {

/// Six-vertex weights keyed by the wire values (0 thin, 1 thick) entering and
/// leaving a vertex on wires (left, right):
///   00->00 a1, 11->11 a2, 01->01 c1, 10->10 c2, 01->10 b1, 10->01 b2.
struct VertexWeights {
    cplx a1 = 1, a2 = 1, b1 = 0, b2 = 0, c1 = 1, c2 = 1;

    /// a = e^{i theta}, b = i sin(theta), c = cos(theta).
    static VertexWeights exchange(double theta);
    /// a = 1 + ix, b = ix, c = 1 (the exchange gate at arctan(x) times sqrt(1 + x^2)).
    static VertexWeights scaled(double x);

    /// (a1 a2 + b1 b2 - c1 c2) / (2 sqrt(a1) sqrt(a2) sqrt(b1) sqrt(b2)), principal roots.
    cplx anisotropy() const;

    bool operator==(const VertexWeights&) const = default;
};

struct LatticeVertex {
    int left = 0;
    int right = 0;
    VertexWeights weights;
};

/// A time-ordered wire diagram: each vertex joins two wires, boundary values
/// are fixed bits or free (summed over).
struct VertexLattice {
    int wires = 0;
    std::vector<std::optional<int>> in, out;
    std::vector<LatticeVertex> vertices;

    /// Free boundary inputs plus one bit per vertex; bounds the enumeration.
    int configuration_bits() const;
    void validate() const;
};

/// One vertex per exchange gate; MEAS records are skipped. A missing boundary
/// string leaves that side free. Throws UnsupportedEvent on S or POST.
VertexLattice circuit_to_lattice(const Circuit& c, const std::optional<BasisState>& in,
                                 const std::optional<BasisState>& out);

inline constexpr int kDefaultVertexCap = 26;

/// Sum over all ice-rule configurations of the product of vertex weights.
/// Throws CapExceeded when configuration_bits() > cap.
cplx partition_bruteforce(const VertexLattice& l, int cap = kDefaultVertexCap, Exec exec = Exec::Parallel);

/// Lattice text format:
///   wires N
///   in 01*1          (one char per wire; '*' = free)
///   out 0110
///   vertex I J theta=<angle>
///   vertex I J a1=<re>,<im> a2=... b1=... b2=... c1=... c2=...   (missing weights default to a=c=1, b=0)
///   dwbc lambda=<l1>,<l2>,... nu=<n1>,<n2>,...   (replaces wires/in/out/vertex)
/// '#' starts a comment.
struct LatticeFile {
    VertexLattice lattice;
    std::optional<std::vector<double>> dwbc_lambda, dwbc_nu;
};
LatticeFile parse_lattice(std::string_view text);
LatticeFile load_lattice(const std::string& path);

// --- domain-wall boundary conditions -----------------------------------------

struct SpectralGrid {
    std::vector<double> lambda;
    std::vector<double> nu;

    int m() const { return static_cast<int>(lambda.size()); }
    void validate() const;
};

/// 2m-qubit circuit: gate (lambda_i, nu_j) = U(arctan(lambda_i - nu_j)) on qubits
/// (p, p + 1), p = m - 1 + j - i, ordered by i + j then p. Input 0^m 1^m.
Circuit dwbc_circuit(const SpectralGrid& g);
BasisState dwbc_boundary(int m);

/// Same diagram with scaled weights a = 1 + ix, b = ix, c = 1, x = lambda_i - nu_j.
VertexLattice dwbc_lattice(const SpectralGrid& g);

/// Izergin-Korepin determinant with lt = i lambda + 1/4, nt = i nu - 1/4,
/// a = lt - nt - 1/2, b = lt - nt + 1/2, c = 1:
///   Z = prod a b / prod_{i<j} (lt_i - lt_j)(nt_j - nt_i) * det[c / (a b)].
/// Throws DegenerateSpectralParameters for coinciding lt or nt, or a b = 0.
cplx dwbc_determinant(const SpectralGrid& g);

/// prod (1 + (lambda_i - nu_j)^2)^{-1/2}; amplitude = prefactor * Z.
double dwbc_prefactor(const SpectralGrid& g);

/// Z on a possibly degenerate grid: lambda_i and nu_i are shifted by
/// eps (i - (m-1)/2), the results at +eps and -eps are averaged, and the
/// averages at eps, eps/2, eps/4 (100-digit arithmetic) are
/// Richardson-extrapolated in eps^2. Throws DegenerateSpectralParameters when
/// some shifted lambda_i equals nu_j.
cplx dwbc_determinant_limit(const SpectralGrid& g, double eps = 1e-5);

/// Max-entry residual of U12(l1,l2) U23(l1,l3) U12(l2,l3) - U23(l2,l3) U12(l1,l3) U23(l1,l2),
/// with U(a, b) = U(arctan(a - b)), on three qubits.
double yang_baxter_check(double l1, double l2, double l3);

}  // namespace xqp
