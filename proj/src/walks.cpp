#include "xqp/walks.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include <Eigen/Eigenvalues>

#include "xqp/errors.hpp"

namespace xqp {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;

std::vector<int> one_positions(const std::string& s) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(s.size()); ++i)
        if (s[i] == '1') out.push_back(i);
    return out;
}

// Moves every 1 of `from` to the matching 1 of `to`: first the rightward
// movers starting from the rightmost, then the leftward movers starting from
// the leftmost. Every intermediate string is a valid symbol.
std::vector<int> direct_walk(const std::string& from, const std::string& to) {
    const auto p = one_positions(from);
    const auto q = one_positions(to);
    std::vector<int> steps;
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        for (int pos = p[i]; pos < q[i]; ++pos) steps.push_back(pos);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (int pos = p[i]; pos > q[i]; --pos) steps.push_back(pos - 1);
    return steps;
}

double walk_prefactor(int r) {
    const double rr = static_cast<double>(r) * r;
    return std::abs(static_cast<double>(r)) / std::sqrt(rr - 1.0);
}

int checked_axial_distance(const YamanouchiSymbol& y, int t) {
    const int r = axial_distance(y, t);
    if (r == 1 || r == -1)
        throw DegenerateAxialDistance("axial distance of " + y.rows() + " at " + std::to_string(t) +
                                      " is " + std::to_string(r));
    return r;
}

}  // namespace

std::vector<int> yamanouchi_walk(const YamanouchiSymbol& from, const YamanouchiSymbol& to,
                                 WalkRoute route) {
    if (from.n() != to.n() || from.ones() != to.ones())
        throw InvalidArgument("walk endpoints " + from.rows() + " and " + to.rows() +
                              " differ in length or spin");
    if (route == WalkRoute::Direct) return direct_walk(from.rows(), to.rows());
    const std::string canon =
        std::string(from.n() - from.ones(), '0') + std::string(from.ones(), '1');
    auto steps = direct_walk(from.rows(), canon);
    auto back = direct_walk(to.rows(), canon);
    steps.insert(steps.end(), back.rbegin(), back.rend());
    return steps;
}

int axial_distance(const YamanouchiSymbol& y, int t) {
    if (t < 0 || t + 1 >= y.n()) throw IndexOutOfRange("walk step out of range");
    return y.content(t + 1) - y.content(t);
}

YamanouchiSymbol swap_positions(const YamanouchiSymbol& y, int t) {
    if (t < 0 || t + 1 >= y.n()) throw IndexOutOfRange("walk step out of range");
    std::string s = y.rows();
    std::swap(s[t], s[t + 1]);
    if (!YamanouchiSymbol::is_valid(s))
        throw InvalidArgument("swapping " + y.rows() + " at " + std::to_string(t) +
                              " leaves the valid symbols");
    return YamanouchiSymbol(s);
}

Eigen::MatrixXd walk_hamiltonian(int t, const YamanouchiSymbol& y, const IrrepMatrixSet& rep) {
    if (y.n() != rep.n) throw InvalidArgument("symbol length does not match representation");
    const int r = checked_axial_distance(y, t);
    const IrrepBlock& b = rep.block(y.two_j());
    // X_{t+1} - X_t is diagonal in the Young basis with the axial distances
    // of every basis symbol on its diagonal.
    Eigen::MatrixXd h = b.adjacent[t];
    const double inv_r2 = 1.0 / (static_cast<double>(r) * r);
    for (int a = 0; a < b.dim(); ++a) h(a, a) -= inv_r2 * axial_distance(b.basis[a], t);
    return walk_prefactor(r) * h;
}

WalkStep walk_unitary(int t, const YamanouchiSymbol& y, const IrrepMatrixSet& rep) {
    const Eigen::MatrixXd h = walk_hamiltonian(t, y, rep);
    const YamanouchiSymbol next = swap_positions(y, t);
    const int d = static_cast<int>(h.rows());

    // Connected components of the sparsity graph of H.
    std::vector<int> parent(d);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (int a = 0; a < d; ++a)
        for (int c = a + 1; c < d; ++c)
            if (std::abs(h(a, c)) > 1e-14) parent[find(a)] = find(c);
    std::map<int, std::vector<int>> comps;
    for (int a = 0; a < d; ++a) comps[find(a)].push_back(a);

    Eigen::MatrixXcd sigma = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& [root, idx] : comps) {
        const int m = static_cast<int>(idx.size());
        Eigen::MatrixXd sub(m, m);
        for (int a = 0; a < m; ++a)
            for (int c = 0; c < m; ++c) sub(a, c) = h(idx[a], idx[c]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub);
        const Eigen::MatrixXd& v = es.eigenvectors();
        Eigen::VectorXcd ph(m);
        for (int a = 0; a < m; ++a) ph(a) = std::polar(1.0, kHalfPi * es.eigenvalues()(a));
        const Eigen::MatrixXcd blk = v.cast<cplx>() * ph.asDiagonal() * v.transpose().cast<cplx>();
        for (int a = 0; a < m; ++a)
            for (int c = 0; c < m; ++c) sigma(idx[a], idx[c]) = blk(a, c);
    }

    const IrrepBlock& b = rep.block(y.two_j());
    WalkStep out;
    out.phase = sigma(b.index_of(next), b.index_of(y));
    out.sigma = std::move(sigma);
    out.axial_distance = axial_distance(y, t);
    out.next = next;
    return out;
}

std::vector<GateEvent> walk_trotter_pulses(int t, const YamanouchiSymbol& y, int steps) {
    if (steps < 1) throw InvalidArgument("Trotter step count must be positive");
    const int r = checked_axial_distance(y, t);
    const double alpha = walk_prefactor(r);
    const double inv_r2 = 1.0 / (static_cast<double>(r) * r);
    const double dt = kHalfPi / steps;

    std::vector<std::pair<std::pair<int, int>, double>> terms;
    terms.push_back({{t, t + 1}, alpha * (1.0 - inv_r2)});
    for (int j = 0; j < t; ++j) {
        terms.push_back({{j, t + 1}, -alpha * inv_r2});
        terms.push_back({{j, t}, alpha * inv_r2});
    }
    std::vector<GateEvent> events;
    events.reserve(terms.size() * steps);
    for (int s = 0; s < steps; ++s)
        for (const auto& [pair, coef] : terms)
            events.push_back(GateEvent::exchange(pair.first, pair.second, coef * dt));
    return events;
}

double walk_trotter_fidelity(int t, const YamanouchiSymbol& y, const IrrepMatrixSet& rep, int steps) {
    const WalkStep exact = walk_unitary(t, y, rep);
    const IrrepBlock& b = rep.block(y.two_j());
    const int d = b.dim();
    std::map<std::pair<int, int>, Eigen::MatrixXcd> trans;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
    v(b.index_of(y)) = 1.0;
    for (const auto& ev : walk_trotter_pulses(t, y, steps)) {
        auto key = std::make_pair(ev.i, ev.j);
        auto it = trans.find(key);
        if (it == trans.end()) it = trans.emplace(key, b.transposition(ev.i, ev.j).cast<cplx>()).first;
        v = std::cos(ev.theta) * v + cplx(0, std::sin(ev.theta)) * (it->second * v);
    }
    const Eigen::VectorXcd target = exact.sigma.col(b.index_of(y));
    return std::norm(target.dot(v));
}

int walk_trotter_steps(int t, const YamanouchiSymbol& y, const IrrepMatrixSet& rep, double target) {
    for (int steps = 1; steps <= (1 << 20); steps *= 2)
        if (1.0 - walk_trotter_fidelity(t, y, rep, steps) <= target) return steps;
    throw CapExceeded("Trotter rendering did not reach the requested error");
}

WalkPlan plan_walk(const YamanouchiSymbol& from, const YamanouchiSymbol& to, WalkRoute route,
                   double trotter_target) {
    const IrrepMatrixSet& rep = young_orthogonal_form(from.n());
    WalkPlan plan;
    plan.steps = yamanouchi_walk(from, to, route);
    plan.symbols.push_back(from);
    for (int t : plan.steps) {
        const YamanouchiSymbol& y = plan.symbols.back();
        const WalkStep step = walk_unitary(t, y, rep);
        const int slices = walk_trotter_steps(t, y, rep, trotter_target);
        const auto pulses = walk_trotter_pulses(t, y, slices);
        plan.axial_distances.push_back(step.axial_distance);
        plan.phases.push_back(step.phase);
        plan.trotter_steps.push_back(slices);
        plan.pulses.insert(plan.pulses.end(), pulses.begin(), pulses.end());
        plan.symbols.push_back(step.next);
    }
    return plan;
}

std::vector<GateEvent> inverse_pulses(const std::vector<GateEvent>& pulses) {
    std::vector<GateEvent> out;
    out.reserve(pulses.size());
    for (auto it = pulses.rbegin(); it != pulses.rend(); ++it) {
        if (it->kind != GateEvent::Kind::Exchange) throw UnsupportedEvent("only exchange pulses invert");
        out.push_back(GateEvent::exchange(it->i, it->j, -it->theta));
    }
    return out;
}

}  // namespace xqp
