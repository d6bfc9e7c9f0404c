#include "xqp/diagnostics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "xqp/errors.hpp"
#include "xqp/simulate.hpp"

namespace xqp {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_prime(int q) {
    if (q < 2) return false;
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

void require_balanced(const Circuit& u, const BasisState& x) {
    if (x.n() != u.n) throw InvalidArgument("basis state and circuit sizes differ");
    if (u.n % 2 != 0) throw InvalidArgument("the filter needs an even qubit count");
    if (2 * x.weight() != u.n) throw InvalidArgument("the filter needs |x| = n/2");
}

// Exchange and S events only; MEAS records are dropped.
std::vector<GateEvent> unitary_events(const Circuit& u) {
    std::vector<GateEvent> out;
    for (const auto& e : u.events) {
        if (e.kind == GateEvent::Kind::Postselect)
            throw UnsupportedEvent("postselection is not allowed in this unitary");
        if (e.kind != GateEvent::Kind::MeasureRecord) out.push_back(e);
    }
    return out;
}

cplx expectation(const MultiSectorState& phi, const std::vector<GateEvent>& events) {
    const RunResult r = run_events(phi, events, Exec::Serial);
    return inner_product(phi, r.state);
}

cplx det_power(cplx d, int k) {
    cplx out = 1.0;
    for (int i = 0; i < k; ++i) out *= d;
    return out;
}

Eigen::MatrixXcd anti_hermitian_log(const Eigen::MatrixXcd& u) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(u);
    const Eigen::MatrixXcd& v = es.eigenvectors();
    Eigen::VectorXcd logs(u.rows());
    for (int a = 0; a < u.rows(); ++a) logs(a) = cplx(0, std::arg(es.eigenvalues()(a)));
    Eigen::MatrixXcd l = v * logs.asDiagonal() * v.inverse();
    l = 0.5 * (l - l.adjoint()).eval();
    l -= (l.trace() / static_cast<double>(u.rows())) * Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    return l;
}

Eigen::VectorXd realify(const Eigen::MatrixXcd& m) {
    Eigen::VectorXd v(2 * m.size());
    for (Eigen::Index k = 0; k < m.size(); ++k) {
        v(2 * k) = m.data()[k].real();
        v(2 * k + 1) = m.data()[k].imag();
    }
    return v;
}

bool looks_rational(double x, long long max_den, double tol) {
    long long h0 = 1, h1 = 0, k0 = 0, k1 = 1;  // convergents h/k
    double rem = x;
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(rem);
        const long long ai = static_cast<long long>(a);
        const long long h = ai * h0 + h1, k = ai * k0 + k1;
        if (k > max_den) return false;
        if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) < tol) return true;
        h1 = h0; h0 = h; k1 = k0; k0 = k;
        const double frac = rem - a;
        if (frac < 1e-300) return true;
        rem = 1.0 / frac;
    }
    return false;
}

}  // namespace

int filter_prime(int n) {
    if (n < 2 || n % 2 != 0) throw InvalidArgument("the filter needs an even qubit count");
    const int h = n / 2;
    int q = h * (h + 1) + 1;
    while (!is_prime(q)) ++q;
    return q;
}

cplx angular_momentum_filter(const Circuit& u, const BasisState& x) {
    require_balanced(u, x);
    const int n = u.n;
    const int q = filter_prime(n);
    const auto index = SectorIndex::get(n, n / 2);
    const int d = static_cast<int>(index->size());

    // J^2 = sum_{i<j} E_ij + (n - n^2/4) on the weight-n/2 sector.
    Eigen::MatrixXd j2 = Eigen::MatrixXd::Zero(d, d);
    for (int a = 0; a < d; ++a) {
        const std::uint64_t s = index->strings[a];
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const std::uint64_t mi = BasisState::mask(n, i), mj = BasisState::mask(n, j);
                const std::uint64_t t = ((s & mi) != 0) == ((s & mj) != 0) ? s : s ^ mi ^ mj;
                j2(static_cast<int>(index->rank(t)), a) += 1.0;
            }
        j2(a, a) += n - n * n / 4.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j2);
    const Eigen::MatrixXd& v = es.eigenvectors();
    const int ix = static_cast<int>(index->rank(x.bits()));

    // sum_r T(r)|x> = V diag(sum_r exp(2 pi i r lambda / Q)) V^T |x>; U is
    // applied once to the summed vector.
    Eigen::VectorXcd weights(d);
    for (int a = 0; a < d; ++a) {
        cplx acc = 0;
        for (int r = 0; r < q; ++r) acc += std::polar(1.0, 2.0 * kPi * r * es.eigenvalues()(a) / q);
        weights(a) = acc * v(ix, a);
    }
    const Eigen::VectorXcd summed = v.cast<cplx>() * weights;

    MultiSectorState psi(n);
    auto& amps = psi.sector(n / 2).amplitudes();
    for (int a = 0; a < d; ++a) amps[a] = summed(a);
    const RunResult r = run_events(psi, unitary_events(u), Exec::Serial);
    return (n / 2 + 1.0) / q * r.state.amplitude(x);
}

cplx projected_amplitude(const Circuit& u, const BasisState& x, int two_j) {
    if (x.n() != u.n) throw InvalidArgument("basis state and circuit sizes differ");
    const int n = u.n;
    const int two_m = n - 2 * x.weight();
    if (two_j < std::abs(two_m)) throw InvalidArgument("the projection of x onto this J vanishes");
    MultiSectorState phi(n);
    auto& acc = phi.sector(x.weight()).amplitudes();
    for (const auto& y : yamanouchi_symbols(n, two_j)) {
        const MultiSectorState s = schur_vector(y, two_m);
        const auto& sa = s.sectors().at(x.weight()).amplitudes();
        const cplx c = std::conj(s.amplitude(x));
        for (std::size_t k = 0; k < sa.size(); ++k) acc[k] += c * sa[k];
    }
    const double nrm = std::sqrt(phi.squared_norm());
    for (auto& a : acc) a /= nrm;
    return expectation(phi, unitary_events(u));
}

std::map<int, Eigen::MatrixXcd> irrep_blocks(const Circuit& c) {
    const IrrepMatrixSet& rep = young_orthogonal_form(c.n);
    std::map<int, Eigen::MatrixXcd> out;
    for (const auto& [two_j, block] : rep.blocks) {
        Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(block.dim(), block.dim());
        for (const auto& e : c.events) {
            if (e.kind == GateEvent::Kind::MeasureRecord) continue;
            if (e.kind != GateEvent::Kind::Exchange)
                throw UnsupportedEvent("irrep blocks need an exchange-only circuit");
            const Eigen::MatrixXcd t = block.transposition(e.i, e.j).cast<cplx>();
            u = (std::cos(e.theta) * u + cplx(0, std::sin(e.theta)) * (t * u)).eval();
        }
        out.emplace(two_j, std::move(u));
    }
    return out;
}

cplx determinant_ratio(const std::map<int, Eigen::MatrixXcd>& blocks, int two_j, int two_k) {
    auto fj = blocks.find(two_j), fk = blocks.find(two_k);
    if (fj == blocks.end() || fk == blocks.end()) throw InvalidArgument("J or K not in the block set");
    const int dj = static_cast<int>(fj->second.rows()), dk = static_cast<int>(fk->second.rows());
    const cplx det_j = Eigen::PartialPivLU<Eigen::MatrixXcd>(fj->second).determinant();
    const cplx det_k = Eigen::PartialPivLU<Eigen::MatrixXcd>(fk->second).determinant();
    return det_power(det_j, dk) / det_power(det_k, dj);
}

cplx determinant_ratio(const Circuit& c, int two_j, int two_k) {
    return determinant_ratio(irrep_blocks(c), two_j, two_k);
}

// ---------------------------------------------------------------------------

Generator parse_generator(const std::string& name) {
    if (name == "G1") return Generator::G1;
    if (name == "G2") return Generator::G2;
    if (name == "G12,23" || name == "G12_23") return Generator::G12_23;
    if (name == "G12,13" || name == "G12_13") return Generator::G12_13;
    if (name == "G13,23" || name == "G13_23") return Generator::G13_23;
    throw InvalidArgument("unknown generator '" + name + "'");
}

std::string generator_name(Generator g) {
    switch (g) {
        case Generator::G1: return "G1";
        case Generator::G2: return "G2";
        case Generator::G12_23: return "G12,23";
        case Generator::G12_13: return "G12,13";
        case Generator::G13_23: return "G13,23";
    }
    return "?";
}

int generator_qubits(Generator g) {
    return (g == Generator::G1 || g == Generator::G2) ? 3 : 4;
}

std::vector<GateEvent> generator_events(Generator g) {
    const double a = kPi / 4, b = 3 * kPi / 4;
    using P = std::pair<int, int>;
    auto ex = [](P p, double t) { return GateEvent::exchange(p.first, p.second, t); };
    // Complementary pair on four qubits.
    auto comp = [](P p) -> P {
        int used = (1 << p.first) | (1 << p.second);
        int x = -1, y = -1;
        for (int q = 0; q < 4; ++q)
            if (!(used & (1 << q))) (x < 0 ? x : y) = q;
        return {x, y};
    };
    switch (g) {
        case Generator::G1:  // U01(a) U12(a) U01(b) U12(b)
            return {ex({1, 2}, b), ex({0, 1}, b), ex({1, 2}, a), ex({0, 1}, a)};
        case Generator::G2:  // U12(a) U02(a) U12(b) U02(b)
            return {ex({0, 2}, b), ex({1, 2}, b), ex({0, 2}, a), ex({1, 2}, a)};
        default: break;
    }
    P ij, kl;
    if (g == Generator::G12_23) { ij = {0, 1}; kl = {1, 2}; }
    else if (g == Generator::G12_13) { ij = {0, 1}; kl = {0, 2}; }
    else { ij = {0, 2}; kl = {1, 2}; }
    const P ijc = comp(ij), klc = comp(kl);
    // [U_ij U_kl U'_ij U'_kl][U_klc U_ijc U'_klc U'_ijc], rightmost first.
    return {ex(ijc, b), ex(klc, b), ex(ijc, a), ex(klc, a),
            ex(kl, b),  ex(ij, b),  ex(kl, a),  ex(ij, a)};
}

GeneratorReport semi_universality_generators(Generator g) {
    GeneratorReport rep;
    rep.which = g;
    const int n = generator_qubits(g);
    rep.blocks = irrep_blocks(make_circuit(BasisState(n, 0), generator_events(g)));
    for (const auto& [two_j, u] : rep.blocks) {
        rep.determinants[two_j] = Eigen::PartialPivLU<Eigen::MatrixXcd>(u).determinant();
        rep.eigenvalues[two_j] = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(u).eigenvalues();
    }
    if (n == 3) {
        // Lex order is (v_001, v_010); the report uses the signed basis (v_010, -v_001).
        Eigen::Matrix2d basis;
        basis << 0, -1, 1, 0;
        Eigen::Matrix2cd u = basis.transpose().cast<cplx>() * rep.blocks.at(1) * basis.cast<cplx>();
        u /= std::sqrt(u.determinant());
        const double c = std::clamp(0.5 * u.trace().real(), -1.0, 1.0);
        rep.rotation_angle = std::acos(c);
        const double s = std::sin(rep.rotation_angle);
        Eigen::Matrix2cd sx, sy, sz;
        sx << 0, 1, 1, 0;
        sy << 0, cplx(0, -1), cplx(0, 1), 0;
        sz << 1, 0, 0, -1;
        const cplx denom(0, 2 * s);
        rep.axis = Eigen::Vector3d(((u * sx).trace() / denom).real(), ((u * sy).trace() / denom).real(),
                                   ((u * sz).trace() / denom).real());
    } else {
        double dev = 0;
        for (int two_j : {0, 4}) {
            const auto& u = rep.blocks.at(two_j);
            dev = std::max(dev, (u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff());
        }
        rep.identity_deviation = dev;
    }
    return rep;
}

DensityReport su3_density_check(const std::vector<Generator>& gens) {
    DensityReport out;
    std::vector<Eigen::MatrixXcd> logs;
    bool all_irrational = true;
    for (Generator g : gens) {
        if (generator_qubits(g) != 4) throw InvalidArgument("density check needs four-qubit generators");
        const auto rep = semi_universality_generators(g);
        const auto& u = rep.blocks.at(2);
        logs.push_back(anti_hermitian_log(u));
        for (Eigen::Index a = 0; a < rep.eigenvalues.at(2).size(); ++a) {
            const double ph = std::arg(rep.eigenvalues.at(2)(a)) / kPi;
            if (std::abs(ph) < 1e-9) continue;
            out.eigenphases_over_pi.push_back(ph);
            if (looks_rational(std::abs(ph), 1000000, 1e-12)) all_irrational = false;
        }
    }
    out.eigenphases_irrational = all_irrational && !out.eigenphases_over_pi.empty();

    // Orthonormal real basis of the span, grown by nested commutators.
    std::vector<Eigen::VectorXd> basis;
    auto add = [&](const Eigen::MatrixXcd& m) {
        Eigen::VectorXd v = realify(m);
        for (const auto& b : basis) v -= b.dot(v) * b;
        const double nv = v.norm();
        if (nv < 1e-9) return false;
        basis.push_back(v / nv);
        return true;
    };
    std::vector<Eigen::MatrixXcd> level;
    for (const auto& l : logs)
        if (add(l)) level.push_back(l);
    for (int depth = 1; depth <= 4 && !level.empty(); ++depth) {
        std::vector<Eigen::MatrixXcd> next;
        for (const auto& a : level)
            for (const auto& g : logs) {
                Eigen::MatrixXcd c = a * g - g * a;
                if (add(c)) next.push_back(std::move(c));
            }
        level = std::move(next);
    }
    out.lie_algebra_dimension = static_cast<int>(basis.size());
    return out;
}

}  // namespace xqp
