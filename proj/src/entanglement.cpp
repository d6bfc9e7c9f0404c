#include "xqp/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "xqp/errors.hpp"

namespace xqp {

namespace {

using Matrix16 = Eigen::Matrix<std::complex<double>, 16, 16>;

// Permutation of the four factors (A1 B1 A2 B2) exchanging positions p and q.
Matrix16 factor_swap(int p, int q) {
    Matrix16 t = Matrix16::Zero();
    for (int x = 0; x < 16; ++x) {
        const int bp = (x >> (3 - p)) & 1, bq = (x >> (3 - q)) & 1;
        int y = x & ~(1 << (3 - p)) & ~(1 << (3 - q));
        y |= bq << (3 - p);
        y |= bp << (3 - q);
        t(y, x) = 1.0;
    }
    return t;
}

Matrix16 kron(const Eigen::Matrix4cd& a, const Eigen::Matrix4cd& b) {
    Matrix16 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
    return out;
}

double entropy_of(const Eigen::Matrix4cd& u, double ta, double pa, double tb, double pb) {
    const Eigen::Vector4cd psi = u * product_state(ta, pa, tb, pb);
    return 2.0 * std::norm(psi(0) * psi(3) - psi(1) * psi(2));
}

struct SearchParams {
    const Eigen::Matrix4cd* u;
};

double negative_entropy(const gsl_vector* x, void* params) {
    const auto* p = static_cast<const SearchParams*>(params);
    return -entropy_of(*p->u, gsl_vector_get(x, 0), gsl_vector_get(x, 1), gsl_vector_get(x, 2),
                       gsl_vector_get(x, 3));
}

}  // namespace

TwoQubitGate TwoQubitGate::exchange(double theta) {
    const std::complex<double> c = std::cos(theta), s(0, std::sin(theta));
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = m(3, 3) = c + s;
    m(1, 1) = m(2, 2) = c;
    m(1, 2) = m(2, 1) = s;
    return {m, "exchange(" + std::to_string(theta) + ")"};
}

TwoQubitGate TwoQubitGate::custom(const Eigen::Matrix4cd& m, std::string provenance) {
    if ((m.adjoint() * m - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() > 1e-12)
        throw InvalidArgument("two-qubit gate is not unitary");
    return {m, std::move(provenance)};
}

double linear_entropy(const Eigen::Vector4cd& psi) {
    if (std::abs(psi.norm() - 1.0) > 1e-8) throw InvalidArgument("state is not normalized");
    return 2.0 * std::norm(psi(0) * psi(3) - psi(1) * psi(2));
}

double linear_entropy_reduced(const Eigen::Vector4cd& psi) {
    if (std::abs(psi.norm() - 1.0) > 1e-8) throw InvalidArgument("state is not normalized");
    Eigen::Matrix2cd m;
    m << psi(0), psi(1), psi(2), psi(3);
    const Eigen::Matrix2cd rho = m * m.adjoint();
    return 1.0 - (rho * rho).trace().real();
}

double entangling_power_exact(const TwoQubitGate& u) {
    static const Matrix16 t13 = factor_swap(0, 2);
    static const Matrix16 t24 = factor_swap(1, 3);
    const Matrix16 u2 = kron(u.matrix, u.matrix);
    const Matrix16 u2d = u2.adjoint();
    const double i0 = 8.0 + (u2 * t13 * u2d * t13).trace().real();
    const double i1 = 8.0 + (u2 * t24 * u2d * t13).trace().real();
    return 1.0 - (i0 + i1) / 36.0;
}

Eigen::Vector2cd ProductStateSampler::next() {
    Eigen::Vector2cd v(std::complex<double>(normal_(rng_), normal_(rng_)),
                       std::complex<double>(normal_(rng_), normal_(rng_)));
    return v / v.norm();
}

MonteCarloEstimate entangling_power_mc(const TwoQubitGate& u, std::uint64_t samples, std::uint64_t seed,
                                       Exec exec) {
    if (samples < 100) throw InvalidArgument("Monte Carlo needs at least 100 samples");
    const std::uint64_t chunks = (samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
    std::vector<double> sum(chunks), sumsq(chunks), norm_sum(chunks);
    const Eigen::Matrix4cd m = u.matrix;

    auto run_chunk = [&](std::uint64_t c) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
        std::mt19937_64 gen(seq);
        ProductStateSampler sampler(gen());
        const std::uint64_t begin = c * kMonteCarloChunk;
        const std::uint64_t end = std::min(samples, begin + kMonteCarloChunk);
        double s = 0, s2 = 0, sn = 0;
        for (std::uint64_t k = begin; k < end; ++k) {
            const Eigen::Vector2cd a = sampler.next(), b = sampler.next();
            Eigen::Vector4cd in;
            in << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
            const Eigen::Vector4cd psi = m * in;
            const double e = 2.0 * std::norm(psi(0) * psi(3) - psi(1) * psi(2));
            s += e;
            s2 += e * e;
            sn += 2.0 * linear_entropy_reduced(psi / psi.norm());
        }
        sum[c] = s;
        sumsq[c] = s2;
        norm_sum[c] = sn;
    };

    const auto n_chunks = static_cast<std::int64_t>(chunks);
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t c = 0; c < n_chunks; ++c) run_chunk(static_cast<std::uint64_t>(c));
    } else {
        for (std::int64_t c = 0; c < n_chunks; ++c) run_chunk(static_cast<std::uint64_t>(c));
    }

    double s = 0, s2 = 0, sn = 0;
    for (std::uint64_t c = 0; c < chunks; ++c) {
        s += sum[c];
        s2 += sumsq[c];
        sn += norm_sum[c];
    }
    const double n = static_cast<double>(samples);
    MonteCarloEstimate out;
    out.samples = samples;
    out.mean = s / n;
    const double var = std::max(0.0, (s2 / n - out.mean * out.mean) * n / (n - 1));
    out.std_error = std::sqrt(var / n);
    out.normalized_mean = sn / n;
    return out;
}

Eigen::Vector4cd product_state(double theta_a, double phi_a, double theta_b, double phi_b) {
    const std::complex<double> a0 = std::cos(theta_a / 2), a1 = std::polar(std::sin(theta_a / 2), phi_a);
    const std::complex<double> b0 = std::cos(theta_b / 2), b1 = std::polar(std::sin(theta_b / 2), phi_b);
    Eigen::Vector4cd v;
    v << a0 * b0, a0 * b1, a1 * b0, a1 * b1;
    return v;
}

MaxEntanglement max_entangling_power(double theta, bool search) {
    MaxEntanglement out;
    out.value = 0.5 * std::pow(std::sin(2 * theta), 2);
    out.witness = Eigen::Vector4cd::Zero();
    out.witness(1) = 1.0;
    if (!search) return out;

    const Eigen::Matrix4cd u = TwoQubitGate::exchange(theta).matrix;
    constexpr int kGrid = 10;
    constexpr double kPi = 3.14159265358979323846;
    struct Point {
        double value;
        Eigen::Vector4d x;
    };
    std::vector<Point> pts;
    pts.reserve(kGrid * kGrid * kGrid * kGrid);
    for (int i = 0; i < kGrid; ++i)
        for (int j = 0; j < kGrid; ++j)
            for (int k = 0; k < kGrid; ++k)
                for (int l = 0; l < kGrid; ++l) {
                    const Eigen::Vector4d x((i + 0.5) * kPi / kGrid, j * 2 * kPi / kGrid, (k + 0.5) * kPi / kGrid,
                                            l * 2 * kPi / kGrid);
                    pts.push_back({entropy_of(u, x(0), x(1), x(2), x(3)), x});
                }
    std::partial_sort(pts.begin(), pts.begin() + 8, pts.end(),
                      [](const Point& a, const Point& b) { return a.value > b.value; });

    gsl_error_handler_t* old = gsl_set_error_handler_off();
    SearchParams params{&u};
    gsl_multimin_function f{&negative_entropy, 4, &params};
    out.search_max = pts.front().value;
    out.search_angles = pts.front().x;
    for (int start = 0; start < 8; ++start) {
        gsl_vector* x = gsl_vector_alloc(4);
        gsl_vector* step = gsl_vector_alloc(4);
        for (int d = 0; d < 4; ++d) {
            gsl_vector_set(x, d, pts[start].x(d));
            gsl_vector_set(step, d, 0.1);
        }
        gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 4);
        gsl_multimin_fminimizer_set(s, &f, x, step);
        for (int it = 0; it < 2000; ++it) {
            if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
            if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-10) == GSL_SUCCESS) break;
        }
        const double v = -gsl_multimin_fminimizer_minimum(s);
        if (v > out.search_max) {
            out.search_max = v;
            for (int d = 0; d < 4; ++d) out.search_angles(d) = gsl_vector_get(s->x, d);
        }
        gsl_multimin_fminimizer_free(s);
        gsl_vector_free(x);
        gsl_vector_free(step);
    }
    gsl_set_error_handler(old);
    return out;
}

std::vector<std::pair<double, double>> entangling_power_sweep(double start, double stop, double step) {
    if (!(step > 0)) throw InvalidArgument("sweep step must be positive");
    std::vector<std::pair<double, double>> out;
    const auto count = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::int64_t k = 0; k < count; ++k) {
        const double th = start + static_cast<double>(k) * step;
        out.emplace_back(th, entangling_power_exact(TwoQubitGate::exchange(th)));
    }
    return out;
}

}  // namespace xqp
