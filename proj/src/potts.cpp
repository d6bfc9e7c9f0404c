#include "xqp/potts.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "xqp/errors.hpp"
#include "xqp/simulate.hpp"
#include "xqp/vertex.hpp"

namespace xqp {

namespace {

constexpr double kPi = 3.14159265358979323846;

int count_components(int sites, const std::vector<PottsLattice::Edge>& edges, std::uint64_t mask,
                     std::vector<int>& parent) {
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    int comps = sites;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (!((mask >> e) & 1u)) continue;
        const int ra = find(edges[e].a), rb = find(edges[e].b);
        if (ra != rb) {
            parent[ra] = rb;
            --comps;
        }
    }
    return comps;
}

}  // namespace

PottsLattice PottsLattice::from_couplings(int w, int h, cplx k_h, cplx k_v, bool periodic_h) {
    if (w < 1 || h < 1) throw InvalidArgument("Potts lattice needs positive width and height");
    return {w, h, std::exp(k_h) - 1.0, std::exp(k_v) - 1.0, periodic_h};
}

PottsLattice PottsLattice::from_angles(int w, int h, double theta_h, double theta_v, bool periodic_h) {
    if (w < 1 || h < 1) throw InvalidArgument("Potts lattice needs positive width and height");
    const double s = std::sin(theta_v);
    if (std::abs(s) < 1e-12) throw InvalidArgument("theta_v must avoid multiples of pi");
    const cplx v_h = std::polar(1.0, -2 * theta_h) - 1.0;
    const cplx v_v = cplx(0, 2 * std::cos(theta_v) / s) - 2.0;
    return {w, h, v_h, v_v, periodic_h};
}

std::vector<PottsLattice::Edge> PottsLattice::edges() const {
    std::vector<Edge> out;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c + 1 < w; ++c) out.push_back({r * w + c, r * w + c + 1, true});
        if (periodic_h && w >= 2) out.push_back({r * w + w - 1, r * w, true});
    }
    for (int r = 0; r + 1 < h; ++r)
        for (int c = 0; c < w; ++c) out.push_back({r * w + c, (r + 1) * w + c, false});
    return out;
}

cplx potts_fk_bruteforce(const PottsLattice& p, cplx q, int cap, Exec exec) {
    const auto edges = p.edges();
    const int ne = static_cast<int>(edges.size());
    if (ne > cap || ne > 40)
        throw CapExceeded("Potts lattice has " + std::to_string(ne) + " edges, above the cap " +
                          std::to_string(cap));
    const int sites = p.sites();
    const std::uint64_t total = std::uint64_t{1} << ne;

    // Powers indexed by count avoid repeated pow() calls.
    std::vector<cplx> qpow(sites + 1, 1.0), hpow(ne + 1, 1.0), vpow(ne + 1, 1.0);
    for (int k = 1; k <= sites; ++k) qpow[k] = qpow[k - 1] * q;
    for (int k = 1; k <= ne; ++k) {
        hpow[k] = hpow[k - 1] * p.v_h;
        vpow[k] = vpow[k - 1] * p.v_v;
    }
    std::uint64_t hmask = 0;
    for (int e = 0; e < ne; ++e)
        if (edges[e].horizontal) hmask |= std::uint64_t{1} << e;

    const int chunks = static_cast<int>(std::min<std::uint64_t>(kReductionChunks, total));
    std::vector<cplx> partial(chunks);
    auto run = [&](int c) {
        std::vector<int> parent(sites);
        cplx acc = 0;
        const std::uint64_t b = chunk_begin(total, chunks, c), e = chunk_begin(total, chunks, c + 1);
        for (std::uint64_t mask = b; mask < e; ++mask) {
            const int comps = count_components(sites, edges, mask, parent);
            const int nh = std::popcount(mask & hmask), nv = std::popcount(mask & ~hmask);
            acc += qpow[comps] * hpow[nh] * vpow[nv];
        }
        partial[c] = acc;
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int c = 0; c < chunks; ++c) run(c);
    } else {
        for (int c = 0; c < chunks; ++c) run(c);
    }
    cplx z = 0;
    for (const auto& x : partial) z += x;
    return z;
}

cplx potts_spin_sum(const PottsLattice& p, int q) {
    if (q < 1) throw InvalidArgument("spin sum needs a positive integer q");
    const int sites = p.sites();
    double states = 1;
    for (int k = 0; k < sites; ++k) states *= q;
    if (states > 1e7) throw CapExceeded("spin enumeration above 1e7 states");
    const auto edges = p.edges();
    std::vector<int> spin(sites, 0);
    cplx z = 0;
    for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(states); ++s) {
        std::uint64_t r = s;
        for (int k = 0; k < sites; ++k) {
            spin[k] = static_cast<int>(r % q);
            r /= q;
        }
        cplx t = 1.0;
        for (const auto& e : edges)
            if (spin[e.a] == spin[e.b]) t *= 1.0 + (e.horizontal ? p.v_h : p.v_v);
        z += t;
    }
    return z;
}

PottsCircuit potts_circuit(int w, int h, double theta_h, double theta_v, bool periodic_h, bool swap_network) {
    if (w < 1 || h < 1) throw InvalidArgument("Potts lattice needs positive width and height");
    const double sv = std::sin(theta_v);
    if (std::abs(sv) < 1e-12) throw InvalidArgument("theta_v must avoid multiples of pi");
    const cplx x_h = cplx(0, std::sin(theta_h)) * std::polar(1.0, -theta_h);
    const cplx x_v = std::polar(1.0, theta_v) / cplx(0, sv);
    if (std::abs(x_h - x_v) < 1e-12) throw InvalidArgument("x_h = x_v (theta = pi/2) gives a SWAP-only circuit");

    const int n = 2 * w;
    std::uint64_t bits = 0;
    for (int k = 0; k < w; ++k) bits |= BasisState::mask(n, 2 * k + 1);
    const BasisState start(n, bits);

    std::vector<GateEvent> ev;
    for (int k = 0; k < w; ++k) {
        ev.push_back(GateEvent::exchange(2 * k, 2 * k + 1, kPi / 4));
        ev.push_back(GateEvent::s(2 * k));
    }
    int n_h = 0, n_v = 0;
    for (int r = 0; r < h; ++r) {
        for (int k = 0; k + 1 < w; ++k, ++n_h) ev.push_back(GateEvent::exchange(2 * k + 1, 2 * k + 2, theta_h));
        if (periodic_h && w >= 2) {
            if (swap_network) {
                // Carry qubit n-1 down to position 1, act on (0, 1), carry it back.
                for (int q = n - 2; q >= 1; --q) ev.push_back(GateEvent::exchange(q, q + 1, kPi / 2));
                ev.push_back(GateEvent::exchange(0, 1, theta_h));
                for (int q = 1; q <= n - 2; ++q) ev.push_back(GateEvent::exchange(q, q + 1, -kPi / 2));
            } else {
                ev.push_back(GateEvent::exchange(n - 1, 0, theta_h));
            }
            ++n_h;
        }
        if (r + 1 < h)
            for (int k = 0; k < w; ++k, ++n_v) ev.push_back(GateEvent::exchange(2 * k, 2 * k + 1, theta_v));
    }
    for (int k = 0; k < w; ++k) {
        ev.push_back(GateEvent::sdg(2 * k));
        ev.push_back(GateEvent::exchange(2 * k, 2 * k + 1, -kPi / 4));
    }

    PottsCircuit pc{make_circuit(start, std::move(ev)), start, 0.0, n_h, n_v,
                    PottsLattice::from_angles(w, h, theta_h, theta_v, periodic_h)};
    const int big_n = w * h;
    cplx pref = std::pow(-2.0, big_n + w);
    pref /= std::pow(cplx(0, sv), n_v);
    pref /= std::polar(1.0, n_h * theta_h);
    pc.prefactor = pref;
    return pc;
}

cplx potts_from_circuit(const PottsCircuit& pc, Exec exec) {
    return pc.prefactor * amplitude(pc.circuit, pc.output, exec);
}

PottsWeightChain potts_weight_chain(double theta_h, double theta_v) {
    PottsWeightChain c;
    const PottsLattice l = PottsLattice::from_angles(1, 1, theta_h, theta_v);
    c.s = std::polar(1.0, kPi / 4);
    c.x_h = -l.v_h / 2.0;
    c.x_v = -l.v_v / 2.0;
    const cplx s2 = c.s * c.s, sm2 = 1.0 / s2;
    c.a_h = 1.0;
    c.b_h = c.x_h;
    c.c1_h = s2 + c.x_h * sm2;
    c.c2_h = sm2 + c.x_h * s2;
    c.a_v = c.x_v;
    c.b_v = 1.0;
    c.c1_v = sm2 + c.x_v * s2;
    c.c2_v = s2 + c.x_v * sm2;
    c.c1_h_mod = sm2 * c.c1_h;
    c.c2_h_mod = s2 * c.c2_h;
    c.c1_v_mod = sm2 * c.c1_v;
    c.c2_v_mod = s2 * c.c2_v;
    c.anisotropy_h = VertexWeights{c.a_h, c.a_h, c.b_h, c.b_h, c.c1_h_mod, c.c2_h_mod}.anisotropy();
    c.anisotropy_v = VertexWeights{c.a_v, c.a_v, c.b_v, c.b_v, c.c1_v_mod, c.c2_v_mod}.anisotropy();
    return c;
}

}  // namespace xqp
