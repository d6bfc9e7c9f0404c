#include "xqp/sector.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <string>

#include "xqp/errors.hpp"

namespace xqp {

namespace {

std::atomic<std::size_t> g_sector_cap{std::size_t{1} << 26};

void check_index(int q, int n, const char* op) {
    if (q < 0 || q >= n)
        throw IndexOutOfRange(std::string(op) + ": qubit " + std::to_string(q) + " out of range for n=" +
                              std::to_string(n));
}

}  // namespace

std::size_t sector_size_cap() { return g_sector_cap.load(); }
void set_sector_size_cap(std::size_t cap) { g_sector_cap.store(cap); }

std::shared_ptr<const SectorIndex> SectorIndex::get(int n, int weight) {
    if (n < 1 || n > kMaxQubits) throw InvalidArgument("sector: n out of range");
    if (weight < 0 || weight > n) throw InvalidArgument("sector: weight out of range");
    if (binomial(n, weight) > sector_size_cap())
        throw SectorTooLarge("sector C(" + std::to_string(n) + "," + std::to_string(weight) +
                             ") exceeds the configured size cap");
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const SectorIndex>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{n, weight}];
    if (!slot) {
        auto idx = std::make_shared<SectorIndex>();
        idx->n = n;
        idx->weight = weight;
        idx->strings = enumerate_fixed_weight(n, weight);
        slot = std::move(idx);
    }
    return slot;
}

SectorState::SectorState(int n, int weight)
    : index_(SectorIndex::get(n, weight)), amps_(index_->size(), cplx{0, 0}) {}

SectorState SectorState::basis(const BasisState& x) {
    SectorState s(x.n(), x.weight());
    s.amps_[rank_fixed_weight(x.bits())] = 1.0;
    return s;
}

cplx SectorState::amplitude(const BasisState& x) const {
    if (x.n() != n() || x.weight() != weight()) return {0, 0};
    return amps_[rank_fixed_weight(x.bits())];
}

cplx& SectorState::at(const BasisState& x) {
    if (x.n() != n() || x.weight() != weight()) throw InvalidArgument("SectorState::at: basis state outside sector");
    return amps_[rank_fixed_weight(x.bits())];
}

double SectorState::squared_norm() const {
    double s = 0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

MultiSectorState MultiSectorState::basis(const BasisState& x) {
    MultiSectorState m(x.n());
    m.sectors_.emplace(x.weight(), SectorState::basis(x));
    return m;
}

MultiSectorState MultiSectorState::from_dense(int n, const std::vector<cplx>& dense) {
    if (dense.size() != (std::size_t{1} << n)) throw InvalidArgument("from_dense: length must be 2^n");
    MultiSectorState m(n);
    for (std::uint64_t x = 0; x < dense.size(); ++x) {
        if (dense[x] == cplx{0, 0}) continue;
        BasisState b(n, x);
        m.sector(b.weight()).at(b) = dense[x];
    }
    return m;
}

SectorState& MultiSectorState::sector(int weight) {
    auto it = sectors_.find(weight);
    if (it == sectors_.end()) {
        it = sectors_.emplace(weight, SectorState(n_, weight)).first;
        it->second.set_norm_tracked(norm_tracked_);
    }
    return it->second;
}

cplx MultiSectorState::amplitude(const BasisState& x) const {
    auto it = sectors_.find(x.weight());
    return it == sectors_.end() ? cplx{0, 0} : it->second.amplitude(x);
}

double MultiSectorState::squared_norm() const {
    double s = 0;
    for (const auto& [w, sec] : sectors_) s += sec.squared_norm();
    return s;
}

std::vector<cplx> MultiSectorState::to_dense() const {
    if (n_ > 26) throw SectorTooLarge("to_dense: n too large");
    std::vector<cplx> d(std::size_t{1} << n_, cplx{0, 0});
    for (const auto& [w, sec] : sectors_) {
        const auto& strings = sec.index().strings;
        for (std::size_t r = 0; r < strings.size(); ++r) d[strings[r]] = sec.amplitudes()[r];
    }
    return d;
}

void MultiSectorState::set_norm_tracked(double v) {
    norm_tracked_ = v;
    for (auto& [w, sec] : sectors_) sec.set_norm_tracked(v);
}

cplx inner_product(const MultiSectorState& a, const MultiSectorState& b) {
    cplx s{0, 0};
    for (const auto& [w, sa] : a.sectors()) {
        auto it = b.sectors().find(w);
        if (it == b.sectors().end()) continue;
        const auto& x = sa.amplitudes();
        const auto& y = it->second.amplitudes();
        for (std::size_t r = 0; r < x.size(); ++r) s += std::conj(x[r]) * y[r];
    }
    return s;
}

double fidelity(const MultiSectorState& a, const MultiSectorState& b) {
    const double na = a.squared_norm(), nb = b.squared_norm();
    if (na == 0 || nb == 0) return 0;
    return std::norm(inner_product(a, b)) / (na * nb);
}

namespace kernels {

void exchange_serial(SectorState& s, int i, int j, double theta) {
    const int n = s.n();
    const std::uint64_t mi = BasisState::mask(n, i), mj = BasisState::mask(n, j);
    const double c = std::cos(theta), sn = std::sin(theta);
    const cplx diag = std::polar(1.0, theta), off(0, sn);
    const auto& strings = s.index().strings;
    auto& a = s.amplitudes();
    for (std::size_t r = 0; r < strings.size(); ++r) {
        const std::uint64_t x = strings[r];
        const bool bi = x & mi, bj = x & mj;
        if (bi == bj) {
            a[r] *= diag;
        } else if (!bi) {
            const std::size_t p = rank_fixed_weight(x ^ mi ^ mj);
            const cplx u = a[r], v = a[p];
            a[r] = c * u + off * v;
            a[p] = off * u + c * v;
        }
    }
}

void exchange_parallel(SectorState& s, int i, int j, double theta) {
    const int n = s.n();
    const std::uint64_t mi = BasisState::mask(n, i), mj = BasisState::mask(n, j);
    const double c = std::cos(theta), sn = std::sin(theta);
    const cplx diag = std::polar(1.0, theta), off(0, sn);
    const auto& strings = s.index().strings;
    cplx* a = s.amplitudes().data();
    const std::int64_t size = static_cast<std::int64_t>(strings.size());
    // Each antisymmetric pair is updated only by its representative with
    // bit i = 0, so writes never overlap.
#pragma omp parallel for schedule(static) if (size > 4096)
    for (std::int64_t r = 0; r < size; ++r) {
        const std::uint64_t x = strings[r];
        const bool bi = x & mi, bj = x & mj;
        if (bi == bj) {
            a[r] *= diag;
        } else if (!bi) {
            const std::size_t p = rank_fixed_weight(x ^ mi ^ mj);
            const cplx u = a[r], v = a[p];
            a[r] = c * u + off * v;
            a[p] = off * u + c * v;
        }
    }
}

void phase_on_one(SectorState& s, int i, cplx phase) {
    const std::uint64_t mi = BasisState::mask(s.n(), i);
    const auto& strings = s.index().strings;
    auto& a = s.amplitudes();
    for (std::size_t r = 0; r < strings.size(); ++r)
        if (strings[r] & mi) a[r] *= phase;
}

double project(SectorState& s, int i, int bit) {
    const std::uint64_t mi = BasisState::mask(s.n(), i);
    const auto& strings = s.index().strings;
    auto& a = s.amplitudes();
    double kept = 0;
    for (std::size_t r = 0; r < strings.size(); ++r) {
        if (static_cast<int>((strings[r] & mi) != 0) != bit) a[r] = 0;
        else kept += std::norm(a[r]);
    }
    return kept;
}

}  // namespace kernels

SectorState apply_exchange(const SectorState& s, int i, int j, double theta, Exec exec) {
    check_index(i, s.n(), "apply_exchange");
    check_index(j, s.n(), "apply_exchange");
    if (i == j) throw InvalidArgument("apply_exchange: i == j");
    SectorState out = s;
    if (exec == Exec::Serial) kernels::exchange_serial(out, i, j, theta);
    else kernels::exchange_parallel(out, i, j, theta);
    return out;
}

MultiSectorState apply_exchange(const MultiSectorState& s, int i, int j, double theta, Exec exec) {
    check_index(i, s.n(), "apply_exchange");
    check_index(j, s.n(), "apply_exchange");
    if (i == j) throw InvalidArgument("apply_exchange: i == j");
    MultiSectorState out = s;
    for (auto& [w, sec] : out.sectors()) {
        if (exec == Exec::Serial) kernels::exchange_serial(sec, i, j, theta);
        else kernels::exchange_parallel(sec, i, j, theta);
    }
    return out;
}

MultiSectorState apply_s(const MultiSectorState& s, int i, bool dagger) {
    check_index(i, s.n(), "apply_s");
    MultiSectorState out = s;
    const cplx phase = dagger ? cplx{0, -1} : cplx{0, 1};
    for (auto& [w, sec] : out.sectors()) kernels::phase_on_one(sec, i, phase);
    return out;
}

PostselectResult postselect(const MultiSectorState& s, int i, int bit) {
    check_index(i, s.n(), "postselect");
    if (bit != 0 && bit != 1) throw InvalidArgument("postselect: bit must be 0 or 1");
    PostselectResult res{s, 0.0};
    const double incoming = s.squared_norm();
    double kept = 0;
    for (auto& [w, sec] : res.state.sectors()) kept += kernels::project(sec, i, bit);
    const double p = incoming > 0 ? kept / incoming : 0.0;
    if (p < 1e-14)
        throw PostselectionImpossible("postselection of qubit " + std::to_string(i) + " on " +
                                      std::to_string(bit) + " has probability " + std::to_string(p));
    const double scale = 1.0 / std::sqrt(kept);
    for (auto it = res.state.sectors().begin(); it != res.state.sectors().end();) {
        if (it->second.squared_norm() == 0) {
            it = res.state.sectors().erase(it);
            continue;
        }
        for (auto& a : it->second.amplitudes()) a *= scale;
        ++it;
    }
    res.state.set_norm_tracked(s.norm_tracked() * p);
    res.probability = p;
    return res;
}

}  // namespace xqp
