#include "xqp/vertex.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/multiprecision/cpp_complex.hpp>

#include <Eigen/Dense>

#include "xqp/errors.hpp"

namespace xqp {

namespace {

using mp_complex = boost::multiprecision::cpp_complex_100;

double magnitude(const cplx& z) { return std::abs(z); }
double magnitude(const mp_complex& z) { return static_cast<double>(boost::multiprecision::abs(z)); }

template <class C>
C determinant(std::vector<std::vector<C>> a) {
    const std::size_t m = a.size();
    C det = C(1);
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < m; ++r)
            if (magnitude(a[r][k]) > magnitude(a[piv][k])) piv = r;
        if (magnitude(a[piv][k]) == 0.0) return C(0);
        if (piv != k) {
            std::swap(a[piv], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (std::size_t r = k + 1; r < m; ++r) {
            const C f = a[r][k] / a[k][k];
            for (std::size_t c = k; c < m; ++c) a[r][c] -= f * a[k][c];
        }
    }
    return det;
}

template <class C>
C izergin_korepin(const std::vector<C>& lt, const std::vector<C>& nt) {
    const std::size_t m = lt.size();
    const C half(0.5), one(1);
    C num(1), den(1);
    std::vector<std::vector<C>> mat(m, std::vector<C>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const C u = lt[i] - nt[j];
            const C ab = (u - half) * (u + half);
            if (magnitude(ab) < 1e-300)
                throw DegenerateSpectralParameters("lambda_i = nu_j makes the a b weight vanish");
            num *= ab;
            mat[i][j] = one / ab;
        }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) den *= (lt[i] - lt[j]) * (nt[j] - nt[i]);
    return num / den * determinant(mat);
}

int parse_bit_char(char ch, const std::string& line) {
    if (ch == '0') return 0;
    if (ch == '1') return 1;
    throw ParseError("bad boundary character in '" + line + "'");
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_angle(item));
    return out;
}

cplx parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return {std::stod(text), 0.0};
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

}  // namespace

VertexWeights VertexWeights::exchange(double theta) {
    const cplx a = std::polar(1.0, theta), b(0, std::sin(theta)), c = std::cos(theta);
    return {a, a, b, b, c, c};
}

VertexWeights VertexWeights::scaled(double x) {
    const cplx a(1, x), b(0, x), c(1, 0);
    return {a, a, b, b, c, c};
}

cplx VertexWeights::anisotropy() const {
    const cplx den = 2.0 * std::sqrt(a1) * std::sqrt(a2) * std::sqrt(b1) * std::sqrt(b2);
    return (a1 * a2 + b1 * b2 - c1 * c2) / den;
}

int VertexLattice::configuration_bits() const {
    int free_in = 0;
    for (const auto& v : in)
        if (!v) ++free_in;
    return free_in + static_cast<int>(vertices.size());
}

void VertexLattice::validate() const {
    if (wires < 1 || wires > kMaxQubits) throw InvalidArgument("lattice wire count out of range");
    if (static_cast<int>(in.size()) != wires || static_cast<int>(out.size()) != wires)
        throw InvalidArgument("boundary length does not match the wire count");
    for (const auto& v : vertices)
        if (v.left < 0 || v.right < 0 || v.left >= wires || v.right >= wires || v.left == v.right)
            throw IndexOutOfRange("vertex joins invalid wires");
}

VertexLattice circuit_to_lattice(const Circuit& c, const std::optional<BasisState>& in,
                                 const std::optional<BasisState>& out) {
    VertexLattice l;
    l.wires = c.n;
    l.in.assign(c.n, std::nullopt);
    l.out.assign(c.n, std::nullopt);
    if (in) {
        if (in->n() != c.n) throw InvalidArgument("input size does not match the circuit");
        for (int q = 0; q < c.n; ++q) l.in[q] = in->bit(q);
    }
    if (out) {
        if (out->n() != c.n) throw InvalidArgument("output size does not match the circuit");
        for (int q = 0; q < c.n; ++q) l.out[q] = out->bit(q);
    }
    for (const auto& e : c.events) {
        if (e.kind == GateEvent::Kind::MeasureRecord) continue;
        if (e.kind != GateEvent::Kind::Exchange)
            throw UnsupportedEvent("only exchange gates map to six-vertex vertices");
        l.vertices.push_back({e.i, e.j, VertexWeights::exchange(e.theta)});
    }
    l.validate();
    return l;
}

namespace {

struct Task {
    std::size_t vertex;
    std::uint64_t state;
    cplx weight;
};

std::uint64_t wire_mask(int wires, int q) { return std::uint64_t{1} << (wires - 1 - q); }

// Expands one vertex: 1 or 2 successors.
template <class F>
void expand(const VertexLattice& l, const Task& t, F&& emit) {
    const auto& v = l.vertices[t.vertex];
    const std::uint64_t ml = wire_mask(l.wires, v.left), mr = wire_mask(l.wires, v.right);
    const int bl = (t.state & ml) != 0, br = (t.state & mr) != 0;
    const std::size_t nv = t.vertex + 1;
    if (bl == br) {
        emit(Task{nv, t.state, t.weight * (bl ? v.weights.a2 : v.weights.a1)});
        return;
    }
    emit(Task{nv, t.state, t.weight * (bl ? v.weights.c2 : v.weights.c1)});
    emit(Task{nv, t.state ^ ml ^ mr, t.weight * (bl ? v.weights.b2 : v.weights.b1)});
}

cplx finish(const VertexLattice& l, std::uint64_t state) {
    for (int q = 0; q < l.wires; ++q)
        if (l.out[q] && ((state & wire_mask(l.wires, q)) != 0) != (*l.out[q] != 0)) return 0.0;
    return 1.0;
}

cplx depth_first(const VertexLattice& l, const Task& t) {
    if (t.weight == cplx(0, 0)) return 0.0;
    if (t.vertex == l.vertices.size()) return t.weight * finish(l, t.state);
    cplx acc = 0;
    expand(l, t, [&](const Task& next) { acc += depth_first(l, next); });
    return acc;
}

}  // namespace

cplx partition_bruteforce(const VertexLattice& l, int cap, Exec exec) {
    l.validate();
    if (l.configuration_bits() > cap)
        throw CapExceeded("lattice has " + std::to_string(l.configuration_bits()) +
                          " configuration bits, above the cap " + std::to_string(cap));

    std::vector<int> free_wires;
    std::uint64_t base = 0;
    for (int q = 0; q < l.wires; ++q) {
        if (!l.in[q]) free_wires.push_back(q);
        else if (*l.in[q]) base |= wire_mask(l.wires, q);
    }
    std::vector<Task> tasks;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << free_wires.size()); ++s) {
        std::uint64_t state = base;
        for (std::size_t k = 0; k < free_wires.size(); ++k)
            if ((s >> k) & 1u) state |= wire_mask(l.wires, free_wires[k]);
        tasks.push_back({0, state, 1.0});
    }
    // Breadth-first prefix expansion into independent tasks.
    constexpr std::size_t kTargetTasks = 256;
    while (tasks.size() < kTargetTasks) {
        bool grew = false;
        std::vector<Task> next;
        for (const auto& t : tasks) {
            if (t.vertex == l.vertices.size() || t.weight == cplx(0, 0)) {
                next.push_back(t);
                continue;
            }
            grew = true;
            expand(l, t, [&](const Task& n) { next.push_back(n); });
        }
        tasks = std::move(next);
        if (!grew) break;
    }

    std::vector<cplx> partial(tasks.size());
    const auto count = static_cast<std::int64_t>(tasks.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t k = 0; k < count; ++k) partial[k] = depth_first(l, tasks[k]);
    } else {
        for (std::int64_t k = 0; k < count; ++k) partial[k] = depth_first(l, tasks[k]);
    }
    cplx z = 0;
    for (const auto& p : partial) z += p;
    return z;
}

LatticeFile parse_lattice(std::string_view text) {
    LatticeFile f;
    VertexLattice& l = f.lattice;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        const std::string where = " (line " + std::to_string(lineno) + ")";
        try {
            if (key == "wires") {
                ls >> l.wires;
                if (l.wires < 1 || l.wires > kMaxQubits) throw ParseError("bad wire count" + where);
                l.in.assign(l.wires, std::nullopt);
                l.out.assign(l.wires, std::nullopt);
            } else if (key == "in" || key == "out") {
                std::string bits;
                ls >> bits;
                if (static_cast<int>(bits.size()) != l.wires) throw ParseError("boundary length mismatch" + where);
                auto& side = key == "in" ? l.in : l.out;
                for (int q = 0; q < l.wires; ++q)
                    side[q] = bits[q] == '*' ? std::nullopt : std::optional<int>(parse_bit_char(bits[q], line));
            } else if (key == "vertex") {
                LatticeVertex v;
                if (!(ls >> v.left >> v.right)) throw ParseError("vertex needs two wires" + where);
                std::string kv;
                while (ls >> kv) {
                    const auto eq = kv.find('=');
                    if (eq == std::string::npos) throw ParseError("expected key=value" + where);
                    const std::string k = kv.substr(0, eq), val = kv.substr(eq + 1);
                    if (k == "theta") v.weights = VertexWeights::exchange(parse_angle(val));
                    else if (k == "a1") v.weights.a1 = parse_complex(val);
                    else if (k == "a2") v.weights.a2 = parse_complex(val);
                    else if (k == "b1") v.weights.b1 = parse_complex(val);
                    else if (k == "b2") v.weights.b2 = parse_complex(val);
                    else if (k == "c1") v.weights.c1 = parse_complex(val);
                    else if (k == "c2") v.weights.c2 = parse_complex(val);
                    else throw ParseError("unknown vertex key '" + k + "'" + where);
                }
                l.vertices.push_back(v);
            } else if (key == "dwbc") {
                std::string kv;
                while (ls >> kv) {
                    const auto eq = kv.find('=');
                    if (eq == std::string::npos) throw ParseError("expected key=value" + where);
                    const std::string k = kv.substr(0, eq), val = kv.substr(eq + 1);
                    if (k == "lambda") f.dwbc_lambda = parse_list(val);
                    else if (k == "nu") f.dwbc_nu = parse_list(val);
                    else throw ParseError("unknown dwbc key '" + k + "'" + where);
                }
                if (!f.dwbc_lambda || !f.dwbc_nu) throw ParseError("dwbc needs lambda and nu" + where);
            } else {
                throw ParseError("unknown directive '" + key + "'" + where);
            }
        } catch (const std::invalid_argument&) {
            throw ParseError("bad number" + where);
        } catch (const std::out_of_range&) {
            throw ParseError("number out of range" + where);
        }
    }
    if (f.dwbc_lambda) {
        f.lattice = dwbc_lattice({*f.dwbc_lambda, *f.dwbc_nu});
    } else {
        if (l.wires == 0) throw ParseError("lattice file has no 'wires' line");
        l.validate();
    }
    return f;
}

LatticeFile load_lattice(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidArgument("cannot open lattice file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_lattice(ss.str());
}

// ---------------------------------------------------------------------------

void SpectralGrid::validate() const {
    if (lambda.empty() || lambda.size() != nu.size())
        throw InvalidArgument("spectral grid needs equal, nonzero numbers of lambda and nu");
    if (2 * lambda.size() > static_cast<std::size_t>(kMaxQubits)) throw InvalidArgument("spectral grid too large");
}

BasisState dwbc_boundary(int m) {
    return BasisState(2 * m, (std::uint64_t{1} << m) - 1);
}

namespace {

struct PlacedGate {
    int time, pos, i, j;
    auto operator<=>(const PlacedGate&) const = default;
};

std::vector<PlacedGate> dwbc_layout(int m) {
    std::vector<PlacedGate> g;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) g.push_back({i + j, m - 1 + (j - i), i, j});
    std::sort(g.begin(), g.end());
    return g;
}

}  // namespace

Circuit dwbc_circuit(const SpectralGrid& g) {
    g.validate();
    std::vector<GateEvent> ev;
    for (const auto& p : dwbc_layout(g.m()))
        ev.push_back(GateEvent::exchange(p.pos, p.pos + 1, std::atan(g.lambda[p.i] - g.nu[p.j])));
    return make_circuit(dwbc_boundary(g.m()), std::move(ev));
}

VertexLattice dwbc_lattice(const SpectralGrid& g) {
    g.validate();
    const BasisState b = dwbc_boundary(g.m());
    VertexLattice l;
    l.wires = 2 * g.m();
    for (int q = 0; q < l.wires; ++q) {
        l.in.push_back(b.bit(q));
        l.out.push_back(b.bit(q));
    }
    for (const auto& p : dwbc_layout(g.m()))
        l.vertices.push_back({p.pos, p.pos + 1, VertexWeights::scaled(g.lambda[p.i] - g.nu[p.j])});
    return l;
}

cplx dwbc_determinant(const SpectralGrid& g) {
    g.validate();
    const int m = g.m();
    std::vector<cplx> lt(m), nt(m);
    for (int k = 0; k < m; ++k) {
        lt[k] = cplx(0.25, g.lambda[k]);
        nt[k] = cplx(-0.25, g.nu[k]);
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (std::abs(lt[i] - lt[j]) < 1e-12 || std::abs(nt[i] - nt[j]) < 1e-12)
                throw DegenerateSpectralParameters("spectral parameters coincide; use the extrapolated limit");
    return izergin_korepin(lt, nt);
}

double dwbc_prefactor(const SpectralGrid& g) {
    g.validate();
    double p = 1.0;
    for (double l : g.lambda)
        for (double n : g.nu) p /= std::sqrt(1.0 + (l - n) * (l - n));
    return p;
}

cplx dwbc_determinant_limit(const SpectralGrid& g, double eps) {
    g.validate();
    if (!(eps > 0)) throw InvalidArgument("eps must be positive");
    const int m = g.m();
    auto z_at = [&](const mp_complex& e) {
        std::vector<mp_complex> lt(m), nt(m);
        for (int k = 0; k < m; ++k) {
            const mp_complex shift = e * mp_complex(k - (m - 1) / 2.0);
            lt[k] = mp_complex(0, 1) * (mp_complex(g.lambda[k]) + shift) + mp_complex(0.25);
            nt[k] = mp_complex(0, 1) * (mp_complex(g.nu[k]) + shift) - mp_complex(0.25);
        }
        return izergin_korepin(lt, nt);
    };
    // The symmetric average removes odd powers of eps on generic grids.
    auto even = [&](const mp_complex& e) { return (z_at(e) + z_at(-e)) / 2; };
    const mp_complex e(eps);
    const mp_complex z1 = even(e), z2 = even(e / 2), z4 = even(e / 4);
    // Z(e) = Z0 + c1 e^2 + c2 e^4 + ...
    const mp_complex r1 = (mp_complex(4) * z2 - z1) / 3, r2 = (mp_complex(4) * z4 - z2) / 3;
    const mp_complex z0 = (mp_complex(16) * r2 - r1) / 15;
    return {static_cast<double>(z0.real()), static_cast<double>(z0.imag())};
}

double yang_baxter_check(double l1, double l2, double l3) {
    auto gate = [](double x) {
        const double th = std::atan(x);
        Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
        u(0, 0) = u(3, 3) = std::polar(1.0, th);
        u(1, 1) = u(2, 2) = std::cos(th);
        u(1, 2) = u(2, 1) = cplx(0, std::sin(th));
        return u;
    };
    using M8 = Eigen::Matrix<cplx, 8, 8>;
    auto u12 = [&](double x) {
        M8 out = M8::Zero();
        const Eigen::Matrix4cd u = gate(x);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 2; ++c) out(2 * a + c, 2 * b + c) = u(a, b);
        return out;
    };
    auto u23 = [&](double x) {
        M8 out = M8::Zero();
        const Eigen::Matrix4cd u = gate(x);
        for (int c = 0; c < 2; ++c) out.block<4, 4>(4 * c, 4 * c) = u;
        return out;
    };
    const M8 lhs = u12(l1 - l2) * u23(l1 - l3) * u12(l2 - l3);
    const M8 rhs = u23(l2 - l3) * u12(l1 - l3) * u23(l1 - l2);
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace xqp
