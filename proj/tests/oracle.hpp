#pragma once

// Independent dense reference used by the tests: full 2^n statevectors and
// explicit 4x4 gate matrices, with no use of the sector machinery.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "xqp/circuit.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Vec = std::vector<cplx>;

inline int bit_of(std::uint64_t x, int n, int q) { return static_cast<int>((x >> (n - 1 - q)) & 1u); }

// Rows/columns indexed by 2*b_i + b_j.
inline Eigen::Matrix4cd exchange_matrix(double theta) {
    const cplx e = std::polar(1.0, theta), c = std::cos(theta), s(0, std::sin(theta));
    Eigen::Matrix4cd m;
    m << e, 0, 0, 0,
         0, c, s, 0,
         0, s, c, 0,
         0, 0, 0, e;
    return m;
}

inline void apply_two(Vec& v, int n, int i, int j, const Eigen::Matrix4cd& g) {
    const std::uint64_t mi = std::uint64_t{1} << (n - 1 - i), mj = std::uint64_t{1} << (n - 1 - j);
    for (std::uint64_t x = 0; x < v.size(); ++x) {
        if (x & (mi | mj)) continue;
        const std::uint64_t idx[4] = {x, x | mj, x | mi, x | mi | mj};
        cplx in[4], out[4];
        for (int k = 0; k < 4; ++k) in[k] = v[idx[k]];
        for (int r = 0; r < 4; ++r) {
            out[r] = 0;
            for (int k = 0; k < 4; ++k) out[r] += g(r, k) * in[k];
        }
        for (int k = 0; k < 4; ++k) v[idx[k]] = out[k];
    }
}

inline void apply_one(Vec& v, int n, int q, const Eigen::Matrix2cd& g) {
    const std::uint64_t m = std::uint64_t{1} << (n - 1 - q);
    for (std::uint64_t x = 0; x < v.size(); ++x) {
        if (x & m) continue;
        const cplx a = v[x], b = v[x | m];
        v[x] = g(0, 0) * a + g(0, 1) * b;
        v[x | m] = g(1, 0) * a + g(1, 1) * b;
    }
}

// Applies the unitary events (Exchange, S, SDG) of a circuit.
inline void apply_events(Vec& v, int n, const std::vector<xqp::GateEvent>& events) {
    for (const auto& e : events) {
        switch (e.kind) {
            case xqp::GateEvent::Kind::Exchange: apply_two(v, n, e.i, e.j, exchange_matrix(e.theta)); break;
            case xqp::GateEvent::Kind::SGate: {
                Eigen::Matrix2cd s;
                s << 1, 0, 0, cplx(0, 1);
                apply_one(v, n, e.i, s);
                break;
            }
            case xqp::GateEvent::Kind::SDagger: {
                Eigen::Matrix2cd s;
                s << 1, 0, 0, cplx(0, -1);
                apply_one(v, n, e.i, s);
                break;
            }
            default: break;
        }
    }
}

inline Vec basis(int n, std::uint64_t x) {
    Vec v(std::size_t{1} << n, 0.0);
    v[x] = 1;
    return v;
}

inline Eigen::MatrixXcd unitary(int n, const std::vector<xqp::GateEvent>& events) {
    const std::size_t d = std::size_t{1} << n;
    Eigen::MatrixXcd u(d, d);
    for (std::size_t x = 0; x < d; ++x) {
        Vec v = basis(n, x);
        apply_events(v, n, events);
        for (std::size_t y = 0; y < d; ++y) u(y, x) = v[y];
    }
    return u;
}

// Random exchange circuit with angles drawn from multiples of pi/4 when
// `quarter` is set, otherwise uniform in [-pi, pi].
inline std::vector<xqp::GateEvent> random_exchange_events(std::mt19937_64& rng, int n, int gates, bool quarter,
                                                          int max_k = 7) {
    std::uniform_int_distribution<int> q(0, n - 1), k(1, max_k);
    std::uniform_real_distribution<double> a(-M_PI, M_PI);
    std::vector<xqp::GateEvent> ev;
    for (int g = 0; g < gates; ++g) {
        int i = q(rng), j = q(rng);
        while (j == i) j = q(rng);
        ev.push_back(xqp::GateEvent::exchange(i, j, quarter ? k(rng) * M_PI / 4 : a(rng)));
    }
    return ev;
}

}  // namespace oracle
