#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "oracle.hpp"
#include "xqp/diagnostics.hpp"
#include "xqp/errors.hpp"
#include "xqp/schur.hpp"
#include "xqp/simulate.hpp"
#include "xqp/walks.hpp"

using namespace xqp;
using std::numbers::pi;

namespace {

const cplx I(0, 1);

Eigen::VectorXcd dense(const MultiSectorState& s) {
    const auto v = s.to_dense();
    return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Columns: every Schur vector |Y, M> of n qubits.
struct SchurTable {
    std::vector<int> two_j, two_m;
    std::vector<YamanouchiSymbol> y;
    Eigen::MatrixXcd columns;
};

SchurTable schur_table(int n) {
    SchurTable t;
    std::vector<Eigen::VectorXcd> cols;
    for (int two_j : allowed_two_j(n))
        for (const auto& y : yamanouchi_symbols(n, two_j))
            for (int two_m = two_j; two_m >= -two_j; two_m -= 2) {
                t.two_j.push_back(two_j);
                t.two_m.push_back(two_m);
                t.y.push_back(y);
                cols.push_back(dense(schur_vector(y, two_m)));
            }
    t.columns.resize(std::int64_t{1} << n, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) t.columns.col(static_cast<Eigen::Index>(c)) = cols[c];
    return t;
}

Eigen::MatrixXcd projector(const SchurTable& t, int two_j) {
    const Eigen::Index d = t.columns.rows();
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index c = 0; c < t.columns.cols(); ++c)
        if (t.two_j[c] == two_j) p += t.columns.col(c) * t.columns.col(c).adjoint();
    return p;
}

// n = 3 signed basis (v_010, -v_001) in lex coordinates.
Eigen::Matrix2d signed_basis() {
    Eigen::Matrix2d b;
    b << 0, -1, 1, 0;
    return b;
}

}  // namespace

// --- irreps and Clebsch-Gordan ---------------------------------------------

TEST(Irrep, Dimensions) {
    EXPECT_EQ(irrep_dim(4, 0), 2);
    EXPECT_EQ(irrep_dim(4, 2), 3);
    EXPECT_EQ(irrep_dim(4, 4), 1);
    EXPECT_EQ(irrep_dim(3, 1), 2);
    EXPECT_THROW(irrep_dim(4, 1), InvalidArgument);
    EXPECT_THROW(irrep_dim(4, 6), InvalidArgument);
    for (int n = 1; n <= 16; ++n) {
        std::uint64_t total = 0;
        for (int two_j : allowed_two_j(n)) {
            total += static_cast<std::uint64_t>(irrep_dim(n, two_j)) * (two_j + 1);
            EXPECT_EQ(static_cast<int>(yamanouchi_symbols(n, two_j).size()), irrep_dim(n, two_j));
        }
        EXPECT_EQ(total, std::uint64_t{1} << n) << n;
    }
}

TEST(Irrep, ClebschGordanExamples) {
    EXPECT_NEAR(clebsch_gordan(1, 1, -1, 0, 0), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(clebsch_gordan(1, -1, 1, 0, 0), -1 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(clebsch_gordan(1, 1, 1, 2, 0), 0.0);
    EXPECT_EQ(clebsch_gordan(1, 1, 1, 4, 2), 0.0);
    EXPECT_NEAR(clebsch_gordan(1, 1, 1, 2, 2), 1.0, 1e-15);
}

TEST(Irrep, ClebschGordanColumnOrthonormality) {
    for (int two_j = 0; two_j <= 8; ++two_j)
        for (int two_J : {two_j - 1, two_j + 1})
            for (int two_Jp : {two_j - 1, two_j + 1}) {
                if (two_J < 0 || two_Jp < 0) continue;
                for (int two_M = -two_J; two_M <= two_J; two_M += 2) {
                    double s = 0;
                    for (int two_ms : {-1, 1})
                        s += clebsch_gordan(two_j, two_M - two_ms, two_ms, two_J, two_M) *
                             clebsch_gordan(two_j, two_M - two_ms, two_ms, two_Jp, two_M);
                    if (std::abs(two_M) <= two_Jp)
                        EXPECT_NEAR(s, two_J == two_Jp ? 1.0 : 0.0, 1e-14);
                }
            }
}

TEST(Yamanouchi, PathBijection) {
    const YamanouchiSymbol y("0010011");
    EXPECT_EQ(y.coupling_path(), (std::vector<int>{1, 2, 1, 2, 3, 2, 1}));
    EXPECT_EQ(YamanouchiSymbol::from_coupling_path(y.coupling_path()), y);
    EXPECT_EQ(y.two_j(), 1);
    EXPECT_THROW(YamanouchiSymbol("0110"), InvalidArgument);
    EXPECT_THROW(YamanouchiSymbol::from_coupling_path({1, 0, -1}), InvalidArgument);
    EXPECT_THROW(YamanouchiSymbol::from_coupling_path({1, 3}), InvalidArgument);
}

// --- Schur vectors ----------------------------------------------------------

TEST(SchurVector, Examples) {
    const auto singlet = schur_vector(YamanouchiSymbol("01"), 0);
    EXPECT_NEAR(singlet.amplitude(BasisState::from_string("01")).real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(singlet.amplitude(BasisState::from_string("10")).real(), -1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(std::abs(schur_vector(YamanouchiSymbol("00"), 2).amplitude(BasisState::from_string("00"))), 1.0,
                1e-15);
    const auto top = schur_vector(std::vector<int>{1, 2, 3, 4}, 4);
    EXPECT_NEAR(std::abs(top.amplitude(BasisState::from_string("0000"))), 1.0, 1e-15);
    EXPECT_THROW(schur_vector(YamanouchiSymbol("01"), 2), InvalidArgument);
}

TEST(SchurVector, TransformIsUnitary) {
    for (int n = 1; n <= 6; ++n) {
        const auto t = schur_table(n);
        ASSERT_EQ(t.columns.cols(), std::int64_t{1} << n);
        const Eigen::MatrixXcd g = t.columns.adjoint() * t.columns;
        EXPECT_LT((g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff(), 1e-10) << n;
    }
}

TEST(SchurVector, ProjectorIdentities) {
    for (int n = 2; n <= 6; ++n) {
        const auto t = schur_table(n);
        const Eigen::Index d = t.columns.rows();
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
        std::map<int, Eigen::MatrixXcd> p;
        for (int two_j : allowed_two_j(n)) p[two_j] = projector(t, two_j);
        for (const auto& [a, pa] : p) {
            sum += pa;
            for (const auto& [b, pb] : p) {
                const Eigen::MatrixXcd expect = a == b ? pa : Eigen::MatrixXcd::Zero(d, d);
                EXPECT_LT((pa * pb - expect).cwiseAbs().maxCoeff(), 1e-10);
            }
        }
        EXPECT_LT((sum - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(SectorOverlap, Examples) {
    for (int n : {2, 4, 6, 8})
        EXPECT_NEAR(sector_overlap(BasisState(n, (std::uint64_t{1} << (n / 2)) - 1), 0), 1.0 / (n / 2 + 1), 1e-15);
    EXPECT_NEAR(sector_overlap(BasisState::from_string("0011"), 2), 0.5, 1e-15);
    EXPECT_EQ(sector_overlap(BasisState::from_string("0001"), 0), 0.0);
}

TEST(SectorOverlap, MatchesExplicitProjector) {
    for (int n = 1; n <= 6; ++n) {
        const auto t = schur_table(n);
        for (int two_j : allowed_two_j(n)) {
            const Eigen::MatrixXcd p = projector(t, two_j);
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
                const double k2 = sector_overlap(BasisState(n, x), two_j);
                EXPECT_NEAR(p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)).real(), k2, 1e-10);
            }
        }
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            double s = 0;
            for (int two_j : allowed_two_j(n)) s += sector_overlap(BasisState(n, x), two_j);
            EXPECT_NEAR(s, 1.0, 1e-12);
        }
    }
}

// --- Young's orthogonal form -------------------------------------------------

TEST(YoungOrthogonalForm, OrthogonalInvolutions) {
    for (int n = 2; n <= 9; ++n) {
        const auto& rep = young_orthogonal_form(n);
        for (const auto& [two_j, b] : rep.blocks) {
            EXPECT_EQ(b.dim(), irrep_dim(n, two_j));
            for (const auto& e : b.adjacent) {
                const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(b.dim(), b.dim());
                EXPECT_LT((e * e - id).cwiseAbs().maxCoeff(), 1e-12);
                EXPECT_LT((e - e.transpose()).cwiseAbs().maxCoeff(), 1e-12);
            }
            // Coxeter braid relation.
            for (int t = 0; t + 2 < n; ++t) {
                const auto& a = b.adjacent[t];
                const auto& c = b.adjacent[t + 1];
                EXPECT_LT((a * c * a - c * a * c).cwiseAbs().maxCoeff(), 1e-12);
            }
        }
    }
}

TEST(YoungOrthogonalForm, ThreeQubitMatricesInSignedBasis) {
    const auto& b = young_orthogonal_form(3).block(1);
    const Eigen::Matrix2d basis = signed_basis();
    const Eigen::Matrix2d e12 = basis.transpose() * b.adjacent[0] * basis;
    const Eigen::Matrix2d e23 = basis.transpose() * b.adjacent[1] * basis;
    Eigen::Matrix2d want12, want23;
    want12 << -1, 0, 0, 1;
    want23 << 0.5, -std::sqrt(3.0) / 2, -std::sqrt(3.0) / 2, -0.5;
    EXPECT_LT((e12 - want12).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((e23 - want23).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(YoungOrthogonalForm, FourQubitE34Block) {
    const auto& b = young_orthogonal_form(4).block(2);
    const Eigen::MatrixXd& e = b.adjacent[2];
    EXPECT_NEAR(e(0, 0), -1.0 / 3, 1e-15);
    EXPECT_NEAR(e(1, 0), std::sqrt(8.0) / 3, 1e-15);
    EXPECT_NEAR(e(0, 1), std::sqrt(8.0) / 3, 1e-15);
    EXPECT_NEAR(e(1, 1), 1.0 / 3, 1e-15);
    EXPECT_NEAR(e(2, 2), 1.0, 1e-15);
}

TEST(YoungOrthogonalForm, MatchesConjugatedSwap) {
    for (int n = 2; n <= 6; ++n) {
        const auto& rep = young_orthogonal_form(n);
        for (const auto& [two_j, b] : rep.blocks)
            for (int two_m = two_j; two_m >= -two_j; two_m -= 2) {
                std::vector<MultiSectorState> vs;
                for (const auto& y : b.basis) vs.push_back(schur_vector(y, two_m));
                for (int t = 0; t + 1 < n; ++t)
                    for (int c = 0; c < b.dim(); ++c) {
                        const auto swapped = apply_exchange(vs[c], t, t + 1, pi / 2);
                        for (int r = 0; r < b.dim(); ++r) {
                            const cplx m = inner_product(vs[r], swapped) / I;
                            EXPECT_NEAR(std::abs(m - b.adjacent[t](r, c)), 0.0, 1e-10)
                                << n << " " << two_j << " " << t;
                        }
                    }
            }
    }
}

TEST(YoungOrthogonalForm, CapAndTranspositions) {
    const int cap = yof_cap();
    set_yof_cap(5);
    EXPECT_THROW(young_orthogonal_form(6), CapExceeded);
    set_yof_cap(cap);
    const auto& b = young_orthogonal_form(5).block(1);
    // (0 3) = (0 1)(1 2)(2 3)(1 2)(0 1)
    const Eigen::MatrixXd want = b.adjacent[0] * b.adjacent[1] * b.adjacent[2] * b.adjacent[1] * b.adjacent[0];
    EXPECT_LT((b.transposition(0, 3) - want).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((b.transposition(3, 0) - want).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(YoungJucysMurphy, DiagonalContents) {
    for (int n = 2; n <= 8; ++n) {
        const auto& rep = young_orthogonal_form(n);
        for (const auto& [two_j, b] : rep.blocks) {
            std::vector<Eigen::MatrixXd> xs;
            for (int i = 0; i < n; ++i) xs.push_back(yjm_element(i, rep, two_j));
            EXPECT_LT(xs[0].cwiseAbs().maxCoeff(), 1e-15);
            for (int i = 0; i < n; ++i) {
                for (int a = 0; a < b.dim(); ++a)
                    for (int c = 0; c < b.dim(); ++c) {
                        const double want = a == c ? b.basis[a].content(i) : 0.0;
                        EXPECT_NEAR(xs[i](a, c), want, 1e-10);
                    }
                for (int k = 0; k < n; ++k)
                    EXPECT_LT((xs[i] * xs[k] - xs[k] * xs[i]).cwiseAbs().maxCoeff(), 1e-12);
            }
        }
    }
}

TEST(YoungJucysMurphy, SecondElementSpectrum) {
    const auto& rep = young_orthogonal_form(4);
    for (const auto& [two_j, b] : rep.blocks) {
        const Eigen::MatrixXd x = yjm_element(1, rep, two_j);
        for (int a = 0; a < b.dim(); ++a) EXPECT_NEAR(x(a, a), b.basis[a].row(1) == 0 ? 1.0 : -1.0, 1e-15);
    }
}

// --- walks --------------------------------------------------------------------

namespace {

YamanouchiSymbol random_symbol(std::mt19937_64& rng, int n, int ones) {
    std::vector<std::string> valid;
    for (std::uint64_t bits : enumerate_fixed_weight(n, ones)) {
        auto s = bits_to_string(bits, n);
        if (YamanouchiSymbol::is_valid(s)) valid.push_back(s);
    }
    return YamanouchiSymbol(valid[std::uniform_int_distribution<std::size_t>(0, valid.size() - 1)(rng)]);
}

}  // namespace

TEST(YamanouchiWalk, Examples) {
    const YamanouchiSymbol y("0101");
    EXPECT_TRUE(yamanouchi_walk(y, y).empty());
    const auto leg = yamanouchi_walk(YamanouchiSymbol("01010101"), YamanouchiSymbol("00001111"));
    EXPECT_LE(leg.size(), 6u);
    EXPECT_EQ(leg.size(), 6u);
    EXPECT_THROW(yamanouchi_walk(YamanouchiSymbol("0101"), YamanouchiSymbol("0001")), InvalidArgument);
    EXPECT_THROW(yamanouchi_walk(YamanouchiSymbol("0101"), YamanouchiSymbol("01010")), InvalidArgument);
}

TEST(YamanouchiWalk, RandomPairsStayValidAndBounded) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = std::uniform_int_distribution<int>(2, 12)(rng);
        const int ones = std::uniform_int_distribution<int>(0, n / 2)(rng);
        const auto a = random_symbol(rng, n, ones), b = random_symbol(rng, n, ones);
        for (auto route : {WalkRoute::Direct, WalkRoute::Canonical}) {
            const auto steps = yamanouchi_walk(a, b, route);
            std::string cur = a.rows();
            for (int t : steps) {
                ASSERT_NE(cur[t], cur[t + 1]);
                std::swap(cur[t], cur[t + 1]);
                ASSERT_TRUE(YamanouchiSymbol::is_valid(cur)) << a.rows() << " -> " << b.rows();
            }
            EXPECT_EQ(cur, b.rows());
            if (route == WalkRoute::Direct && n != 3)
                EXPECT_LE(4 * static_cast<int>(steps.size()), n * (n - 2)) << a.rows() << " " << b.rows();
        }
    }
}

TEST(WalkUnitary, MapsSymbolToPhaseTimesNeighbour) {
    for (int n = 3; n <= 8; ++n) {
        const auto& rep = young_orthogonal_form(n);
        for (const auto& [two_j, b] : rep.blocks)
            for (const auto& y : b.basis)
                for (int t = 0; t + 1 < n; ++t) {
                    const int r = axial_distance(y, t);
                    if (std::abs(r) == 1) {
                        EXPECT_THROW(walk_unitary(t, y, rep), DegenerateAxialDistance);
                        continue;
                    }
                    const auto step = walk_unitary(t, y, rep);
                    EXPECT_NEAR(std::abs(step.phase), 1.0, 1e-10);
                    EXPECT_EQ(axial_distance(step.next, t), -r);
                    const Eigen::MatrixXcd u = step.sigma;
                    EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(b.dim(), b.dim())).cwiseAbs().maxCoeff(),
                              1e-10);
                }
    }
}

TEST(WalkUnitary, HamiltonianMatchesJucysMurphyRecursion) {
    for (int n = 3; n <= 7; ++n) {
        const auto& rep = young_orthogonal_form(n);
        for (const auto& [two_j, b] : rep.blocks)
            for (const auto& y : b.basis)
                for (int t = 0; t + 1 < n; ++t) {
                    const int r = axial_distance(y, t);
                    if (std::abs(r) < 2) continue;
                    const Eigen::MatrixXd& e = b.adjacent[t];
                    const Eigen::MatrixXd xt = yjm_element(t, rep, two_j);
                    const Eigen::MatrixXd xt1 = yjm_element(t + 1, rep, two_j);
                    EXPECT_LT((e * xt * e + e - xt1).cwiseAbs().maxCoeff(), 1e-12);
                    const Eigen::MatrixXd want =
                        std::abs(r) / std::sqrt(r * r - 1.0) * (e - (xt1 - xt) / static_cast<double>(r * r));
                    EXPECT_LT((walk_hamiltonian(t, y, rep) - want).cwiseAbs().maxCoeff(), 1e-12);
                }
    }
}

TEST(WalkUnitary, TrotterRendering) {
    const auto& rep = young_orthogonal_form(6);
    const YamanouchiSymbol y("001011");
    const int t = 3;  // 0 1 at positions 3, 4
    ASSERT_GE(std::abs(axial_distance(y, t)), 2);
    const int steps = static_cast<int>(std::ceil((pi / 2) / 1e-2));
    EXPECT_GE(walk_trotter_fidelity(t, y, rep, steps), 1 - 1e-3);
    const int chosen = walk_trotter_steps(t, y, rep, 1e-3);
    EXPECT_GE(walk_trotter_fidelity(t, y, rep, chosen), 1 - 1e-3);
    if (chosen > 1) EXPECT_LT(walk_trotter_fidelity(t, y, rep, chosen / 2), 1 - 1e-3);
}

TEST(WalkUnitary, PulsesMatchYoungRepresentationOnSimulator) {
    // The pulses act on the physical register like sigma acts on V_J.
    const YamanouchiSymbol y("0011");
    const auto& rep = young_orthogonal_form(4);
    const auto pulses = walk_trotter_pulses(1, y, 512);
    const auto step = walk_unitary(1, y, rep);
    const auto in = schur_vector(y, 0);
    const auto out = run_events(in, pulses, Exec::Serial).state;
    const auto target = schur_vector(step.next, 0);
    EXPECT_NEAR(std::abs(inner_product(target, out) - step.phase), 0.0, 1e-2);
    EXPECT_GE(fidelity(target, out), 1 - 1e-4);
}

// --- filter and amplitude reduction ------------------------------------------

TEST(Filter, IdentityAndSinglet) {
    for (int n : {2, 4, 6}) {
        const BasisState x(n, (std::uint64_t{1} << (n / 2)) - 1);
        const cplx f = angular_momentum_filter(make_circuit(x), x);
        EXPECT_NEAR(std::abs(f - 1.0), 0.0, 1e-12) << n;
    }
    EXPECT_EQ(filter_prime(2), 3);
    EXPECT_EQ(filter_prime(4), 7);
    EXPECT_EQ(filter_prime(6), 13);
    EXPECT_EQ(filter_prime(8), 23);
    // n = 2: T = E_01 and the J = 0 state has eigenvalue -1.
    const double alpha = 0.37;
    const BasisState x = BasisState::from_string("01");
    const cplx f = angular_momentum_filter(make_circuit(x, {GateEvent::exchange(0, 1, alpha)}), x);
    EXPECT_NEAR(std::abs(f - std::polar(1.0, -alpha)), 0.0, 1e-12);
    EXPECT_THROW(angular_momentum_filter(make_circuit(BasisState::from_string("001")), BasisState::from_string("001")),
                 InvalidArgument);
    EXPECT_THROW(angular_momentum_filter(make_circuit(BasisState::from_string("0001")),
                                         BasisState::from_string("0001")),
                 InvalidArgument);
}

TEST(Filter, MatchesProjectedOracle) {
    std::mt19937_64 rng(5);
    for (int n : {4, 6}) {
        for (int trial = 0; trial < 20; ++trial) {
            const BasisState x(n, enumerate_fixed_weight(n, n / 2)[trial % binomial(n, n / 2)]);
            const auto c = make_circuit(x, oracle::random_exchange_events(rng, n, 12, false));
            const cplx f = angular_momentum_filter(c, x);
            const cplx o = projected_amplitude(c, x, 0);
            EXPECT_NEAR(std::abs(f - o), 0.0, 1e-8);
        }
    }
}

TEST(AmplitudeReduction, EightQubitsToTwoLogical) {
    // |phi_0> of |0^4 1^4> is the Schur state 00001111; the walk maps it to the
    // singlet product 01010101, a DFS4 product state. Exchange pulses inside
    // each four-qubit block implement a logical unitary u_b on V_0 of the block.
    std::mt19937_64 rng(11);
    const BasisState x = BasisState::from_string("00001111");
    const YamanouchiSymbol from("00001111"), to("01010101");

    std::vector<GateEvent> dfs;
    cplx logical = 1.0;
    for (int block = 0; block < 2; ++block) {
        auto ev = oracle::random_exchange_events(rng, 4, 6, true);
        const auto u = irrep_blocks(make_circuit(BasisState(4, 0), ev)).at(0);
        const auto& b = young_orthogonal_form(4).block(0);
        const int z = b.index_of(YamanouchiSymbol("0101"));
        logical *= u(z, z);
        for (auto& e : ev) {
            e.i += 4 * block;
            e.j += 4 * block;
        }
        dfs.insert(dfs.end(), ev.begin(), ev.end());
    }

    // Exact check through the representation.
    const auto& rep = young_orthogonal_form(8);
    const auto& v0 = rep.block(0);
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity(v0.dim(), v0.dim());
    YamanouchiSymbol cur = from;
    for (int t : yamanouchi_walk(from, to)) {
        const auto step = walk_unitary(t, cur, rep);
        w = step.sigma * w;
        cur = step.next;
    }
    EXPECT_EQ(cur, to);
    const auto udfs = irrep_blocks(make_circuit(x, dfs)).at(0);
    const int i0 = v0.index_of(from);
    const cplx exact = (w.adjoint() * udfs * w)(i0, i0);
    EXPECT_NEAR(std::abs(exact - logical), 0.0, 1e-10);

    // Full circuit on the simulator, through the filter.
    const auto plan = plan_walk(from, to, WalkRoute::Direct, 1e-9);
    std::vector<GateEvent> events = plan.pulses;
    events.insert(events.end(), dfs.begin(), dfs.end());
    const auto back = inverse_pulses(plan.pulses);
    events.insert(events.end(), back.begin(), back.end());
    const cplx filtered = angular_momentum_filter(make_circuit(x, events), x);
    EXPECT_NEAR(std::abs(filtered - logical), 0.0, 1e-3);
}

// --- determinant ratio and generators ----------------------------------------

TEST(DeterminantRatio, Examples) {
    const auto c = make_circuit(BasisState(5, 0), {GateEvent::exchange(1, 3, pi / 3)});
    EXPECT_NEAR(std::abs(determinant_ratio(c, 5, 3) - std::polar(1.0, 2 * pi / 3)), 0.0, 1e-12);

    std::mt19937_64 rng(9);
    for (int n : {3, 5, 6}) {
        for (int trial = 0; trial < 10; ++trial) {
            auto ev = oracle::random_exchange_events(rng, n, 9, true, 1);
            const int m = static_cast<int>(ev.size());
            const cplx want = std::polar(1.0, m * pi / 2);
            EXPECT_NEAR(std::abs(determinant_ratio(make_circuit(BasisState(n, 0), ev), n, n - 2) - want), 0.0, 1e-10);
        }
    }
    for (int n : {4, 5}) {
        const auto blocks = irrep_blocks(make_circuit(BasisState(n, 0), oracle::random_exchange_events(rng, n, 10, false)));
        for (const auto& [two_j, u] : blocks) EXPECT_NEAR(std::abs(determinant_ratio(blocks, two_j, two_j) - 1.0), 0.0, 1e-12);
        auto shifted = blocks;
        for (auto& [two_j, u] : shifted) u *= std::polar(1.0, 0.813);
        for (const auto& [a, ua] : blocks)
            for (const auto& [b, ub] : blocks)
                EXPECT_NEAR(std::abs(determinant_ratio(shifted, a, b) - determinant_ratio(blocks, a, b)), 0.0, 1e-10);
    }
}

TEST(Generators, ThreeQubitRotations) {
    const auto g1 = semi_universality_generators(Generator::G1);
    EXPECT_NEAR(std::abs(g1.determinants.at(1) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(g1.rotation_angle, std::acos(5.0 / 8), 1e-12);
    EXPECT_NEAR(g1.axis(0), std::sqrt(3.0 / 39), 1e-12);
    EXPECT_NEAR(g1.axis(1), -std::sqrt(27.0 / 39), 1e-12);
    EXPECT_NEAR(g1.axis(2), -std::sqrt(9.0 / 39), 1e-12);

    const auto g2 = semi_universality_generators(Generator::G2);
    EXPECT_NEAR(std::abs(g2.determinants.at(1) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(g2.rotation_angle, std::acos(5.0 / 8), 1e-12);
    EXPECT_NEAR(g2.axis(0), -std::sqrt(12.0 / 39), 1e-12);
    EXPECT_NEAR(g2.axis(1), -std::sqrt(27.0 / 39), 1e-12);
    EXPECT_NEAR(g2.axis(2), 0.0, 1e-12);
    EXPECT_GT(std::abs(g1.axis.dot(g2.axis)), 0.0);
    EXPECT_LT(std::abs(g1.axis.dot(g2.axis)), 1.0 - 1e-6);
}

TEST(Generators, FourQubitSpectra) {
    const double phi = std::acos(1.0 / 8);
    for (Generator g : {Generator::G12_23, Generator::G12_13, Generator::G13_23}) {
        const auto r = semi_universality_generators(g);
        EXPECT_LT(r.identity_deviation, 1e-10) << generator_name(g);
        std::vector<double> phases;
        for (Eigen::Index a = 0; a < r.eigenvalues.at(2).size(); ++a) {
            EXPECT_NEAR(std::abs(r.eigenvalues.at(2)(a)), 1.0, 1e-12);
            phases.push_back(std::arg(r.eigenvalues.at(2)(a)));
        }
        std::sort(phases.begin(), phases.end());
        EXPECT_NEAR(phases[0], -phi, 1e-10);
        EXPECT_NEAR(phases[1], 0.0, 1e-10);
        EXPECT_NEAR(phases[2], phi, 1e-10);
    }
    EXPECT_EQ(parse_generator("G12,23"), Generator::G12_23);
    EXPECT_THROW(parse_generator("G9"), InvalidArgument);
}

TEST(Generators, DensityStandIn) {
    const auto d = su3_density_check({Generator::G12_23, Generator::G12_13, Generator::G13_23});
    EXPECT_EQ(d.lie_algebra_dimension, 8);
    EXPECT_TRUE(d.eigenphases_irrational);
    EXPECT_EQ(d.eigenphases_over_pi.size(), 6u);
}
