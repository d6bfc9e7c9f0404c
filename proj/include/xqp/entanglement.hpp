#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "xqp/parallel.hpp"

namespace xqp {

/// A two-qubit unitary in the basis {|00>, |01>, |10>, |11>}.
struct TwoQubitGate {
    Eigen::Matrix4cd matrix;
    std::string provenance;

    /// U(theta) = cos(theta) 1 + i sin(theta) SWAP.
    static TwoQubitGate exchange(double theta);
    /// Throws InvalidArgument when `m` is not unitary to 1e-12.
    static TwoQubitGate custom(const Eigen::Matrix4cd& m, std::string provenance = "custom");
};

/// E_lin = 2|AD - BC|^2 for psi = A|00> + B|01> + C|10> + D|11>.
/// Throws InvalidArgument when the norm is off by more than 1e-8.
double linear_entropy(const Eigen::Vector4cd& psi);

/// 1 - Tr(rho_A^2) through the reduced density matrix.
double linear_entropy_reduced(const Eigen::Vector4cd& psi);

/// 1 - (I_0 + I_1)/36 with I_0 = 8 + Tr(U2 T13 U2^dag T13),
/// I_1 = 8 + Tr(U2 T24 U2^dag T13), U2 = U (x) U on (A1 B1 A2 B2).
double entangling_power_exact(const TwoQubitGate& u);

/// Haar-random single-qubit states from two normalized complex Gaussians.
class ProductStateSampler {
public:
    explicit ProductStateSampler(std::uint64_t seed) : rng_(seed) {}
    Eigen::Vector2cd next();

private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

struct MonteCarloEstimate {
    double mean = 0;
    double std_error = 0;
    /// Mean of the normalized entropy 2(1 - Tr rho_A^2).
    double normalized_mean = 0;
    std::uint64_t samples = 0;
};

/// Samples needed per reduction chunk; chunk c draws from seed (seed, c), so
/// the estimate does not depend on the thread count.
inline constexpr std::uint64_t kMonteCarloChunk = 4096;

/// Average E_lin(U |psi> (x) |phi>) over Haar-random product inputs.
MonteCarloEstimate entangling_power_mc(const TwoQubitGate& u, std::uint64_t samples, std::uint64_t seed,
                                       Exec exec = Exec::Parallel);

/// |a(theta_a, phi_a)> (x) |b(theta_b, phi_b)> with Bloch angles.
Eigen::Vector4cd product_state(double theta_a, double phi_a, double theta_b, double phi_b);

struct MaxEntanglement {
    double value = 0;             ///< 1/2 sin^2(2 theta)
    Eigen::Vector4cd witness;     ///< |01>
    double search_max = 0;        ///< best value found by the grid + simplex search
    Eigen::Vector4d search_angles = Eigen::Vector4d::Zero();
};

/// Analytic maximum over product inputs with a numerical confirmation:
/// a 10^4-point Bloch-angle grid followed by Nelder-Mead refinement.
MaxEntanglement max_entangling_power(double theta, bool search = true);

/// (theta, e_p(U(theta))) for theta = start, start + step, ... <= stop.
std::vector<std::pair<double, double>> entangling_power_sweep(double start, double stop, double step);

}  // namespace xqp
