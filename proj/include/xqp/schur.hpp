#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "xqp/basis.hpp"
#include "xqp/sector.hpp"

namespace xqp {

// Half-integers (J, M, j, m) are passed doubled: two_j = 2J.

/// Allowed 2J for n qubits, largest first: n, n-2, ..., n mod 2.
std::vector<int> allowed_two_j(int n);

/// dim V_J = C(n, n/2 - J) - C(n, n/2 - J - 1). Throws InvalidArgument for J not in J_n.
int irrep_dim(int n, int two_j);

/// Condon-Shortley coefficient <j m; 1/2 ms | J M>; zero outside the selection rules.
double clebsch_gordan(int two_j, int two_m, int two_ms, int two_J, int two_M);

/// A standard-tableau path written as rows (Y_1..Y_n), Y_k in {0,1}, with
/// every prefix holding at least as many 0s as 1s.
class YamanouchiSymbol {
public:
    YamanouchiSymbol() = default;
    explicit YamanouchiSymbol(std::string rows);

    static bool is_valid(const std::string& rows);
    /// Inverse of coupling_path(): two_j[k] = 2 j_[k+1].
    static YamanouchiSymbol from_coupling_path(const std::vector<int>& two_j);

    const std::string& rows() const { return rows_; }
    int n() const { return static_cast<int>(rows_.size()); }
    int ones() const;
    int two_j() const { return n() - 2 * ones(); }

    int row(int t) const { return rows_[t] - '0'; }
    int column(int t) const;
    /// column - row of entry t (0-indexed).
    int content(int t) const;
    /// Doubled coupled spins j_[1..n]: two_j[k] = (k+1) - 2 (ones in rows[0..k]).
    std::vector<int> coupling_path() const;

    auto operator<=>(const YamanouchiSymbol&) const = default;

private:
    std::string rows_;
};

/// All Yamanouchi symbols of length n with total spin J, in lexicographic order.
std::vector<YamanouchiSymbol> yamanouchi_symbols(int n, int two_j);

/// The Schur state |Y, M> expanded in the computational basis; the amplitude
/// of a bitstring is the product of the Clebsch-Gordan coefficients along the
/// coupling path. |0> is spin up, so the state lives in weight (n - 2M)/2.
MultiSectorState schur_vector(const YamanouchiSymbol& y, int two_m);
MultiSectorState schur_vector(const std::vector<int>& coupling_path, int two_m);

/// k^2_{J,M} = <x|Pi_J|x> = dim V_J / C(n, |x|), with M = n/2 - |x|; zero when J < |M|.
double sector_overlap(const BasisState& x, int two_j);

/// Young's orthogonal form of one irrep V_J.
struct IrrepBlock {
    int n = 0;
    int two_j = 0;
    std::vector<YamanouchiSymbol> basis;
    std::map<std::string, int> index;
    /// adjacent[t] represents the transposition of qubits (t, t+1).
    std::vector<Eigen::MatrixXd> adjacent;

    int dim() const { return static_cast<int>(basis.size()); }
    int index_of(const YamanouchiSymbol& y) const;
    /// Representation of the transposition of qubits i and j (any order).
    Eigen::MatrixXd transposition(int i, int j) const;
};

struct IrrepMatrixSet {
    int n = 0;
    std::map<int, IrrepBlock> blocks;

    const IrrepBlock& block(int two_j) const;
};

int yof_cap();
void set_yof_cap(int cap);

/// Cached Young-orthogonal matrices for all J at n qubits (n <= yof_cap()).
/// Safe for concurrent readers.
const IrrepMatrixSet& young_orthogonal_form(int n);

/// Jucys-Murphy element X_i = sum_{j<i} E_{j,i} on V_J (qubits 0-indexed).
Eigen::MatrixXd yjm_element(int i, const IrrepMatrixSet& rep, int two_j);

}  // namespace xqp
