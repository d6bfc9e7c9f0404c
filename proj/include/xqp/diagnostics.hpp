#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "xqp/circuit.hpp"
#include "xqp/schur.hpp"

namespace xqp {

/// Smallest prime Q > (n/2)(n/2 + 1).
int filter_prime(int n);

/// (n/2 + 1)/Q sum_r <x| U T(r) |x>, T(r) = exp(2 pi i r J^2 / Q), which equals
/// <phi_0|U|phi_0> for |phi_0> the normalized J = 0 projection of |x>.
/// J^2 = sum_{i<j} E_ij + (n - n^2/4) is diagonalized in the weight-n/2 sector.
cplx angular_momentum_filter(const Circuit& u, const BasisState& x);

/// <phi|U|phi> with |phi> = Pi_J|x> / |Pi_J|x>|, Pi_J assembled from Schur vectors.
cplx projected_amplitude(const Circuit& u, const BasisState& x, int two_j);

/// Representation u_J of an exchange-only circuit on every irrep V_J,
/// built from Young-orthogonal matrices.
std::map<int, Eigen::MatrixXcd> irrep_blocks(const Circuit& c);

/// det(u_J)^{dim V_K} / det(u_K)^{dim V_J}.
cplx determinant_ratio(const std::map<int, Eigen::MatrixXcd>& blocks, int two_j, int two_k);
cplx determinant_ratio(const Circuit& c, int two_j, int two_k);

enum class Generator { G1, G2, G12_23, G12_13, G13_23 };

Generator parse_generator(const std::string& name);
std::string generator_name(Generator g);
int generator_qubits(Generator g);

/// Application-ordered sqrt(SWAP) pulses realizing the generator.
std::vector<GateEvent> generator_events(Generator g);

struct GeneratorReport {
    Generator which{};
    std::map<int, Eigen::MatrixXcd> blocks;
    std::map<int, cplx> determinants;
    std::map<int, Eigen::VectorXcd> eigenvalues;
    /// n = 3: SU(2) rotation angle and axis on V_{1/2}, in the basis
    /// (v_010, -v_001).
    double rotation_angle = 0;
    Eigen::Vector3d axis = Eigen::Vector3d::Zero();
    /// n = 4: max |u - 1| over V_0 and V_2.
    double identity_deviation = 0;
};

GeneratorReport semi_universality_generators(Generator g);

struct DensityReport {
    int lie_algebra_dimension = 0;
    std::vector<double> eigenphases_over_pi;
    bool eigenphases_irrational = false;
};

/// Stand-in density check on V_1 (n = 4) for the given generators: nested
/// commutators of their logarithms to depth 4, and a continued-fraction test
/// that each eigenphase / pi has no rational approximation p/q with q <= 1e6
/// closer than 1e-12.
DensityReport su3_density_check(const std::vector<Generator>& gens);

}  // namespace xqp
