#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "xqp/errors.hpp"
#include "xqp/simulate.hpp"

using namespace xqp;
using std::numbers::pi;

namespace {

const cplx I(0, 1);

MultiSectorState ket(const std::string& s) { return MultiSectorState::basis(BasisState::from_string(s)); }

cplx amp(const MultiSectorState& st, const std::string& s) { return st.amplitude(BasisState::from_string(s)); }

}  // namespace

TEST(Ranking, RoundTripAndLexicographicOrder) {
    for (int n = 1; n <= 10; ++n)
        for (int k = 0; k <= n; ++k) {
            const auto all = enumerate_fixed_weight(n, k);
            ASSERT_EQ(all.size(), binomial(n, k));
            for (std::size_t r = 0; r < all.size(); ++r) {
                EXPECT_EQ(rank_fixed_weight(all[r]), r);
                EXPECT_EQ(unrank_fixed_weight(r, n, k), all[r]);
                if (r) EXPECT_LT(bits_to_string(all[r - 1], n), bits_to_string(all[r], n));
            }
        }
}

TEST(BasisStateTest, QubitZeroIsLeftmost) {
    auto x = BasisState::from_string("1000");
    EXPECT_EQ(x.bit(0), 1);
    EXPECT_EQ(x.bit(3), 0);
    EXPECT_EQ(x.weight(), 1);
    EXPECT_EQ(x.to_string(), "1000");
    EXPECT_THROW(BasisState::from_string("10a"), ParseError);
}

TEST(Exchange, ZeroAngleIsIdentity) {
    auto s = apply_exchange(ket("0110"), 0, 2, 0.0);
    EXPECT_EQ(amp(s, "0110"), cplx(1, 0));
}

TEST(Exchange, HalfPiIsISwap) {
    auto s = apply_exchange(ket("01"), 0, 1, pi / 2);
    EXPECT_NEAR(std::abs(amp(s, "10") - I), 0, 1e-15);
    EXPECT_NEAR(std::abs(amp(s, "01")), 0, 1e-15);
}

TEST(Exchange, SqrtSwapOnAntiAlignedPair) {
    auto s = apply_exchange(ket("01"), 0, 1, pi / 4);
    EXPECT_NEAR(std::abs(amp(s, "01") - 1 / std::sqrt(2.0)), 0, 1e-15);
    EXPECT_NEAR(std::abs(amp(s, "10") - I / std::sqrt(2.0)), 0, 1e-15);
}

TEST(Exchange, AlignedPairGetsPhase) {
    const double th = 0.37;
    auto s = apply_exchange(ket("101"), 0, 2, th);
    EXPECT_NEAR(std::abs(amp(s, "101") - std::polar(1.0, th)), 0, 1e-15);
}

TEST(Exchange, IndexErrors) {
    EXPECT_THROW(apply_exchange(ket("01"), 0, 2, 0.1), IndexOutOfRange);
    EXPECT_THROW(apply_exchange(ket("01"), 1, 1, 0.1), InvalidArgument);
}

TEST(Exchange, SerialAndParallelKernelsAgreeBitwise) {
    std::mt19937_64 rng(7);
    SectorState a(16, 8);
    std::normal_distribution<double> g;
    for (auto& x : a.amplitudes()) x = cplx(g(rng), g(rng));
    SectorState b = a;
    for (int t = 0; t < 20; ++t) {
        int i = t % 16, j = (5 * t + 3) % 16;
        if (i == j) continue;
        kernels::exchange_serial(a, i, j, 0.1 * t);
        kernels::exchange_parallel(b, i, j, 0.1 * t);
    }
    EXPECT_EQ(a.amplitudes(), b.amplitudes());
}

TEST(SGate, Examples) {
    EXPECT_EQ(amp(apply_s(ket("0"), 0, false), "0"), cplx(1, 0));
    EXPECT_EQ(amp(apply_s(ket("1"), 0, false), "1"), I);
    EXPECT_EQ(amp(apply_s(ket("1"), 0, true), "1"), -I);
    auto singlet = apply_s(apply_exchange(ket("01"), 0, 1, pi / 4), 0, false);
    EXPECT_NEAR(std::abs(amp(singlet, "01") - 1 / std::sqrt(2.0)), 0, 1e-15);
    EXPECT_NEAR(std::abs(amp(singlet, "10") + 1 / std::sqrt(2.0)), 0, 1e-15);
    EXPECT_THROW(apply_s(ket("01"), 5, false), IndexOutOfRange);
}

TEST(Postselect, HalfProbabilityBranch) {
    auto s = apply_exchange(ket("01"), 0, 1, pi / 4);
    auto r = postselect(s, 0, 0);
    EXPECT_NEAR(r.probability, 0.5, 1e-15);
    EXPECT_NEAR(std::abs(amp(r.state, "01")), 1.0, 1e-15);
    EXPECT_NEAR(r.state.norm_tracked(), 0.5, 1e-15);
}

TEST(Postselect, DeterministicAndImpossible) {
    auto r = postselect(ket("01"), 0, 0);
    EXPECT_EQ(r.probability, 1.0);
    EXPECT_EQ(amp(r.state, "01"), cplx(1, 0));
    EXPECT_THROW(postselect(ket("0"), 0, 1), PostselectionImpossible);
}

TEST(RunCircuit, EmptyCircuit) {
    auto c = make_circuit(BasisState::from_string("0101"));
    auto r = run_circuit(c);
    EXPECT_EQ(r.success_probability, 1.0);
    EXPECT_EQ(amp(r.state, "0101"), cplx(1, 0));
}

TEST(RunCircuit, SwapNetworkPermutesWithPhase) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 6;
        std::vector<int> perm(n);
        for (int q = 0; q < n; ++q) perm[q] = q;
        std::vector<GateEvent> ev;
        std::uniform_int_distribution<int> d(0, n - 1);
        const int N = 9;
        for (int g = 0; g < N; ++g) {
            int i = d(rng), j = d(rng);
            while (j == i) j = d(rng);
            ev.push_back(GateEvent::exchange(i, j, pi / 2));
            std::swap(perm[i], perm[j]);
        }
        auto x = BasisState::from_string("110100");
        std::string y(n, '0');
        for (int q = 0; q < n; ++q) y[q] = x.to_string()[perm[q]];
        auto a = amplitude(make_circuit(x, ev), BasisState::from_string(y));
        EXPECT_NEAR(std::abs(a - std::pow(I, N)), 0, 1e-12);
    }
}

TEST(RunCircuit, PostselectionFailureReportsEventIndex) {
    auto c = make_circuit(BasisState::from_string("00"), {GateEvent::exchange(0, 1, 0.3), GateEvent::post(1, 1)});
    try {
        run_circuit(c);
        FAIL();
    } catch (const PostselectionImpossible& e) {
        EXPECT_EQ(e.event_index(), 1);
    }
}

TEST(Amplitude, Examples) {
    auto c = make_circuit(BasisState::from_string("01"), {GateEvent::exchange(0, 1, pi / 4)});
    EXPECT_NEAR(std::abs(amplitude(c, BasisState::from_string("01")) - 1 / std::sqrt(2.0)), 0, 1e-15);
    EXPECT_EQ(amplitude(c, BasisState::from_string("11")), cplx(0, 0));
    c.events.push_back(GateEvent::post(0, 0));
    EXPECT_THROW(amplitude(c, BasisState::from_string("01")), UnsupportedEvent);
}

TEST(Amplitude, MatchesDenseOracle) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 5;
        auto ev = oracle::random_exchange_events(rng, n, 8, false);
        std::uniform_int_distribution<std::uint64_t> pick(0, (1u << n) - 1);
        const std::uint64_t x = pick(rng);
        auto v = oracle::basis(n, x);
        oracle::apply_events(v, n, ev);
        auto c = make_circuit(BasisState(n, x), ev);
        for (std::uint64_t y = 0; y < (1u << n); ++y)
            EXPECT_NEAR(std::abs(amplitude(c, BasisState(n, y)) - v[y]), 0, 1e-12);
    }
}

TEST(PathSum, SingleGateExamples) {
    auto c = make_circuit(BasisState::from_string("01"), {GateEvent::exchange(0, 1, pi / 4)});
    EXPECT_NEAR(std::abs(amplitude_path_sum(c, BasisState::from_string("01")) - 1 / std::sqrt(2.0)), 0, 1e-15);
    EXPECT_NEAR(std::abs(amplitude_path_sum(c, BasisState::from_string("10")) - I / std::sqrt(2.0)), 0, 1e-15);
}

TEST(PathSum, RejectsLargeAndNonQuarterCircuits) {
    auto c = make_circuit(BasisState::from_string("01"), {GateEvent::exchange(0, 1, 0.3)});
    EXPECT_THROW(amplitude_path_sum(c, BasisState::from_string("01")), InvalidArgument);
    std::vector<GateEvent> ev(10, GateEvent::exchange(0, 1, 3 * pi / 4));
    auto big = make_circuit(BasisState::from_string("01"), ev);
    EXPECT_THROW(amplitude_path_sum(big, BasisState::from_string("01"), 20), OracleTooLarge);
}

TEST(PathSum, EightFactorRandomCircuitMatchesAmplitude) {
    std::mt19937_64 rng(5);
    std::vector<GateEvent> ev;
    std::uniform_int_distribution<int> q(0, 4);
    for (int g = 0; g < 8; ++g) {
        int i = q(rng), j = q(rng);
        while (j == i) j = q(rng);
        ev.push_back(GateEvent::exchange(i, j, pi / 4));
    }
    auto c = make_circuit(BasisState::from_string("01101"), ev);
    EXPECT_EQ(sqrt_swap_factor_count(c), 8);
    for (auto y : enumerate_fixed_weight(5, 3)) {
        BasisState out(5, y);
        EXPECT_NEAR(std::abs(amplitude(c, out) - amplitude_path_sum(c, out)), 0, 1e-10);
    }
}

TEST(PathSum, OracleEquivalenceOnAllLowWeightBoundaries) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 4 + trial % 3;
        std::vector<GateEvent> ev;
        int N = 0;
        std::uniform_int_distribution<int> q(0, n - 1), k(1, 3);
        while (true) {
            int kk = k(rng);
            if (N + kk > 12) break;
            int i = q(rng), j = q(rng);
            while (j == i) j = q(rng);
            ev.push_back(GateEvent::exchange(i, j, kk * pi / 4));
            N += kk;
        }
        for (int w = 0; w <= n / 2; ++w)
            for (auto x : enumerate_fixed_weight(n, w)) {
                auto c = make_circuit(BasisState(n, x), ev);
                auto out = run_circuit(c).state;
                for (auto y : enumerate_fixed_weight(n, w)) {
                    BasisState ys(n, y);
                    EXPECT_NEAR(std::abs(out.amplitude(ys) - amplitude_path_sum(c, ys, 26, Exec::Serial)), 0, 1e-10);
                }
            }
    }
}

TEST(PathSum, SerialAndParallelAgree) {
    std::mt19937_64 rng(23);
    auto ev = oracle::random_exchange_events(rng, 6, 8, true, 2);
    auto c = make_circuit(BasisState::from_string("010110"), ev);
    for (auto y : enumerate_fixed_weight(6, 3)) {
        BasisState out(6, y);
        EXPECT_EQ(amplitude_path_sum(c, out, 26, Exec::Serial), amplitude_path_sum(c, out, 26, Exec::Parallel));
    }
}

TEST(Properties, HammingWeightConservationAndUnitarity) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 7;
        auto ev = oracle::random_exchange_events(rng, n, 12, false);
        std::uniform_int_distribution<std::uint64_t> pick(0, (1u << n) - 1);
        BasisState x(n, pick(rng));
        auto st = run_circuit(make_circuit(x, ev)).state;
        auto dense = st.to_dense();
        double total = 0;
        for (std::uint64_t y = 0; y < dense.size(); ++y) {
            if (std::popcount(y) != x.weight()) EXPECT_EQ(dense[y], cplx(0, 0));
            total += std::norm(dense[y]);
        }
        EXPECT_NEAR(total, 1.0, 1e-10);
    }
}

TEST(Properties, GlobalHadamardConjugationInvariance) {
    std::mt19937_64 rng(31);
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    for (int n = 2; n <= 6; ++n) {
        auto ev = oracle::random_exchange_events(rng, n, 2 * n, false);
        std::uniform_int_distribution<std::uint64_t> pick(0, (1u << n) - 1);
        const std::uint64_t x = pick(rng);
        auto v = oracle::basis(n, x);
        for (int q = 0; q < n; ++q) oracle::apply_one(v, n, q, h);
        auto st = run_events(MultiSectorState::from_dense(n, v), ev).state;
        auto w = st.to_dense();
        for (int q = 0; q < n; ++q) oracle::apply_one(w, n, q, h);
        auto direct = run_circuit(make_circuit(BasisState(n, x), ev)).state.to_dense();
        for (std::size_t y = 0; y < w.size(); ++y) EXPECT_NEAR(std::norm(w[y]), std::norm(direct[y]), 1e-10);
    }
}

TEST(Properties, CompositionThroughIntermediateSector) {
    std::mt19937_64 rng(37);
    for (int n = 2; n <= 5; ++n) {
        auto e1 = oracle::random_exchange_events(rng, n, 5, false);
        auto e2 = oracle::random_exchange_events(rng, n, 5, false);
        auto both = e1;
        both.insert(both.end(), e2.begin(), e2.end());
        const int w = n / 2;
        const auto strings = enumerate_fixed_weight(n, w);
        BasisState x(n, strings.front());
        for (auto y : strings) {
            cplx via{0, 0};
            for (auto z : strings)
                via += amplitude(make_circuit(BasisState(n, z), e2), BasisState(n, y)) *
                       amplitude(make_circuit(x, e1), BasisState(n, z));
            EXPECT_NEAR(std::abs(via - amplitude(make_circuit(x, both), BasisState(n, y))), 0, 1e-12);
        }
    }
}

TEST(Sampling, DeterministicCircuitSingleBin) {
    auto c = make_circuit(BasisState::from_string("0110"), {GateEvent::exchange(0, 1, pi / 2)});
    auto h = sample_outputs(c, 1000, 1);
    ASSERT_EQ(h.counts.size(), 1u);
    EXPECT_EQ(h.counts.at("1010"), 1000u);
}

TEST(Sampling, BornRuleAndSeedStability) {
    auto c = make_circuit(BasisState::from_string("01"), {GateEvent::exchange(0, 1, pi / 4)});
    auto a = sample_outputs(c, 100000, 1);
    auto b = sample_outputs(c, 100000, 2);
    EXPECT_NEAR(a.frequency("01"), 0.5, 0.01);
    EXPECT_NEAR(a.frequency("10"), 0.5, 0.01);
    EXPECT_LT(total_variation(a, b), 0.02);
    EXPECT_EQ(a.counts, sample_outputs(c, 100000, 1).counts);
}

TEST(Sampling, MeasureRecordsSelectReportedQubits) {
    auto c = make_circuit(BasisState::from_string("011"),
                          {GateEvent::exchange(0, 1, pi / 2), GateEvent::meas(2), GateEvent::meas(0)});
    auto h = sample_outputs(c, 10, 3);
    EXPECT_EQ(h.counts.at("11"), 10u);
    EXPECT_EQ(h.to_csv(), "bitstring,count,probability\n11,10,1\n");
}

TEST(CircuitFormat, RoundTrip) {
    std::mt19937_64 rng(41);
    auto ev = oracle::random_exchange_events(rng, 5, 6, false);
    ev.push_back(GateEvent::exchange(0, 1, 3 * pi / 4));
    ev.push_back(GateEvent::s(2));
    ev.push_back(GateEvent::sdg(3));
    ev.push_back(GateEvent::post(4, 1));
    ev.push_back(GateEvent::meas(1));
    auto c = make_circuit(BasisState::from_string("01011"), ev);
    EXPECT_EQ(parse_circuit(format_circuit(c)), c);

    Circuit s;
    s.n = 4;
    s.input.base = BasisState::from_string("0000");
    s.input.singlets = {{0, 1}, {2, 3}};
    s.restricted_angle = pi / 4;
    s.events = {GateEvent::exchange(1, 2, pi / 4)};
    EXPECT_EQ(parse_circuit(format_circuit(s)), s);
}

TEST(CircuitFormat, ParsesAnglesAndRejectsBadInput) {
    EXPECT_DOUBLE_EQ(parse_angle("pi/4"), pi / 4);
    EXPECT_DOUBLE_EQ(parse_angle("3pi/4"), 3 * pi / 4);
    EXPECT_DOUBLE_EQ(parse_angle("-pi/2"), -pi / 2);
    EXPECT_DOUBLE_EQ(parse_angle("0.25"), 0.25);
    EXPECT_THROW(parse_angle("pi/x"), ParseError);
    EXPECT_THROW(parse_circuit("n=2 input=01\nX 0 0 pi/4\n"), InvalidArgument);
    EXPECT_THROW(parse_circuit("n=2 input=01 family=pi/4\nX 0 1 0.3\n"), InvalidArgument);
    EXPECT_THROW(parse_circuit("n=2 input=01\nY 0 1\n"), ParseError);
    EXPECT_THROW(parse_circuit("n=3 input=01\n"), ParseError);
}

TEST(InputPreparation, SingletPairs) {
    auto c = parse_circuit("n=4 input=singlets:0-1,2-3\n");
    auto st = prepare_input(c);
    EXPECT_NEAR(std::abs(amp(st, "0101") - 0.5), 0, 1e-15);
    EXPECT_NEAR(std::abs(amp(st, "1001") + 0.5), 0, 1e-15);
    EXPECT_NEAR(std::abs(amp(st, "1010") - 0.5), 0, 1e-15);
    EXPECT_NEAR(st.squared_norm(), 1.0, 1e-15);
}
