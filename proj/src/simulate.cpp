#include "xqp/simulate.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "xqp/errors.hpp"

namespace xqp {

MultiSectorState prepare_input(const Circuit& c) {
    c.validate();
    const auto& base = c.input.base;
    if (c.input.singlets.empty()) return MultiSectorState::basis(base);
    const std::size_t p = c.input.singlets.size();
    if (p > 24) throw SectorTooLarge("prepare_input: too many singlet pairs");
    std::uint64_t cleared = base.bits();
    for (const auto& [a, b] : c.input.singlets) cleared &= ~(BasisState::mask(c.n, a) | BasisState::mask(c.n, b));
    MultiSectorState state(c.n);
    const double amp = std::pow(std::numbers::sqrt2 / 2, static_cast<double>(p));
    for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << p); ++choice) {
        std::uint64_t bits = cleared;
        int sign = 1;
        for (std::size_t k = 0; k < p; ++k) {
            const auto [a, b] = c.input.singlets[k];
            if ((choice >> k) & 1u) {
                bits |= BasisState::mask(c.n, a);
                sign = -sign;
            } else {
                bits |= BasisState::mask(c.n, b);
            }
        }
        BasisState x(c.n, bits);
        state.sector(x.weight()).at(x) = amp * sign;
    }
    return state;
}

RunResult run_events(const MultiSectorState& initial, const std::vector<GateEvent>& events, Exec exec) {
    RunResult res{initial, 1.0, {}};
    const int n = initial.n();
    for (std::size_t k = 0; k < events.size(); ++k) {
        const auto& e = events[k];
        if (e.i < 0 || e.i >= n || (e.kind == GateEvent::Kind::Exchange && (e.j < 0 || e.j >= n)))
            throw IndexOutOfRange("event " + std::to_string(k) + ": qubit index out of range");
        switch (e.kind) {
            case GateEvent::Kind::Exchange:
                if (e.i == e.j) throw InvalidArgument("event " + std::to_string(k) + ": exchange with i == j");
                for (auto& [w, sec] : res.state.sectors()) {
                    if (exec == Exec::Serial) kernels::exchange_serial(sec, e.i, e.j, e.theta);
                    else kernels::exchange_parallel(sec, e.i, e.j, e.theta);
                }
                break;
            case GateEvent::Kind::SGate:
            case GateEvent::Kind::SDagger: {
                const cplx ph = e.kind == GateEvent::Kind::SGate ? cplx{0, 1} : cplx{0, -1};
                for (auto& [w, sec] : res.state.sectors()) kernels::phase_on_one(sec, e.i, ph);
                break;
            }
            case GateEvent::Kind::Postselect:
                try {
                    auto ps = postselect(res.state, e.i, e.bit);
                    res.state = std::move(ps.state);
                    res.success_probability *= ps.probability;
                    res.postselect_probabilities.push_back(ps.probability);
                } catch (const PostselectionImpossible& err) {
                    throw PostselectionImpossible(
                        "event " + std::to_string(k) + ": " + err.what(), static_cast<std::ptrdiff_t>(k));
                }
                break;
            case GateEvent::Kind::MeasureRecord:
                break;
        }
    }
    return res;
}

RunResult run_circuit(const Circuit& c, Exec exec) { return run_events(prepare_input(c), c.events, exec); }

cplx amplitude(const Circuit& c, const BasisState& out, Exec exec) {
    if (c.has_postselection()) throw UnsupportedEvent("amplitude: postselection events are not allowed");
    if (out.n() != c.n) throw InvalidArgument("amplitude: output length differs from n");
    return run_circuit(c, exec).state.amplitude(out);
}

namespace {

struct PathCounts {
    std::int64_t c[4] = {0, 0, 0, 0};
};

std::vector<std::uint64_t> sqrt_swap_factors(const Circuit& c) {
    std::vector<std::uint64_t> masks;
    for (const auto& e : c.events) {
        if (e.kind == GateEvent::Kind::MeasureRecord) continue;
        if (e.kind != GateEvent::Kind::Exchange)
            throw UnsupportedEvent("amplitude_path_sum: only exchange events are supported");
        if (!is_multiple_of(e.theta, std::numbers::pi / 4))
            throw InvalidArgument("amplitude_path_sum: angle " + format_angle(e.theta) + " is not a multiple of pi/4");
        long long k = std::llround(e.theta / (std::numbers::pi / 4)) % 8;
        if (k < 0) k += 8;
        const std::uint64_t m = BasisState::mask(c.n, e.i) | BasisState::mask(c.n, e.j);
        for (long long t = 0; t < k; ++t) masks.push_back(m);
    }
    return masks;
}

inline std::uint64_t apply_swap(std::uint64_t x, std::uint64_t m) {
    return std::popcount(x & m) == 1 ? x ^ m : x;
}

void path_dfs(const std::vector<std::uint64_t>& f, std::size_t t, std::uint64_t x, int power,
              std::uint64_t target, PathCounts& acc) {
    if (t == f.size()) {
        if (x == target) ++acc.c[power & 3];
        return;
    }
    path_dfs(f, t + 1, x, power, target, acc);
    path_dfs(f, t + 1, apply_swap(x, f[t]), power + 1, target, acc);
}

}  // namespace

int sqrt_swap_factor_count(const Circuit& c) { return static_cast<int>(sqrt_swap_factors(c).size()); }

cplx amplitude_path_sum(const Circuit& c, const BasisState& out, int cap, Exec exec) {
    if (!c.input.singlets.empty()) throw UnsupportedEvent("amplitude_path_sum: basis-state input required");
    if (out.n() != c.n) throw InvalidArgument("amplitude_path_sum: output length differs from n");
    const auto f = sqrt_swap_factors(c);
    const int N = static_cast<int>(f.size());
    if (N > cap) throw OracleTooLarge("amplitude_path_sum: " + std::to_string(N) + " factors exceed cap " +
                                      std::to_string(cap));
    const std::uint64_t x0 = c.input.base.bits(), y = out.bits();
    std::int64_t c0 = 0, c1 = 0, c2 = 0, c3 = 0;
    if (x0 != y && c.input.base.weight() != out.weight()) return {0, 0};
    if (exec == Exec::Serial || N < 8) {
        PathCounts acc;
        path_dfs(f, 0, x0, 0, y, acc);
        c0 = acc.c[0], c1 = acc.c[1], c2 = acc.c[2], c3 = acc.c[3];
    } else {
        const int L = std::min(N, 12);
        const std::int64_t prefixes = std::int64_t{1} << L;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : c0, c1, c2, c3)
        for (std::int64_t p = 0; p < prefixes; ++p) {
            std::uint64_t x = x0;
            for (int t = 0; t < L; ++t)
                if ((p >> t) & 1) x = apply_swap(x, f[t]);
            PathCounts acc;
            path_dfs(f, static_cast<std::size_t>(L), x, std::popcount(static_cast<std::uint64_t>(p)), y, acc);
            c0 += acc.c[0], c1 += acc.c[1], c2 += acc.c[2], c3 += acc.c[3];
        }
    }
    const double scale = std::pow(2.0, -0.5 * N);
    return scale * cplx(static_cast<double>(c0 - c2), static_cast<double>(c1 - c3));
}

double Histogram::frequency(const std::string& key) const {
    auto it = counts.find(key);
    return it == counts.end() || shots == 0 ? 0.0 : static_cast<double>(it->second) / static_cast<double>(shots);
}

std::string Histogram::to_csv() const {
    std::ostringstream out;
    out << "bitstring,count,probability\n";
    out.precision(10);
    for (const auto& [k, v] : counts) out << k << ',' << v << ',' << frequency(k) << '\n';
    return out.str();
}

namespace {

std::vector<int> reported_qubits(const Circuit& c) {
    std::vector<int> q;
    std::vector<char> seen(c.n, 0);
    for (const auto& e : c.events)
        if (e.kind == GateEvent::Kind::MeasureRecord && !seen[e.i]) {
            seen[e.i] = 1;
            q.push_back(e.i);
        }
    if (q.empty())
        for (int i = 0; i < c.n; ++i) q.push_back(i);
    return q;
}

std::map<std::string, double> marginal(const MultiSectorState& s, const std::vector<int>& qubits) {
    std::map<std::string, double> dist;
    const int n = s.n();
    std::string key(qubits.size(), '0');
    for (const auto& [w, sec] : s.sectors()) {
        const auto& strings = sec.index().strings;
        const auto& a = sec.amplitudes();
        for (std::size_t r = 0; r < strings.size(); ++r) {
            const double p = std::norm(a[r]);
            if (p == 0) continue;
            for (std::size_t t = 0; t < qubits.size(); ++t)
                key[t] = (strings[r] & BasisState::mask(n, qubits[t])) ? '1' : '0';
            dist[key] += p;
        }
    }
    return dist;
}

}  // namespace

std::map<std::string, double> output_distribution(const Circuit& c, Exec exec) {
    const auto res = run_circuit(c, exec);
    return marginal(res.state, reported_qubits(c));
}

Histogram sample_outputs(const Circuit& c, std::uint64_t shots, std::uint64_t seed, Exec exec) {
    const auto dist = output_distribution(c, exec);
    std::vector<std::string> keys;
    std::vector<double> weights;
    for (const auto& [k, p] : dist) {
        keys.push_back(k);
        weights.push_back(p);
    }
    Histogram h;
    h.shots = shots;
    h.qubits = reported_qubits(c);
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    std::vector<std::uint64_t> tally(keys.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) ++tally[pick(rng)];
    for (std::size_t k = 0; k < keys.size(); ++k)
        if (tally[k]) h.counts[keys[k]] = tally[k];
    return h;
}

double total_variation(const Histogram& a, const Histogram& b) {
    std::map<std::string, double> diff;
    for (const auto& [k, v] : a.counts) diff[k] += a.frequency(k);
    for (const auto& [k, v] : b.counts) diff[k] -= b.frequency(k);
    double s = 0;
    for (const auto& [k, v] : diff) s += std::abs(v);
    return 0.5 * s;
}

}  // namespace xqp
