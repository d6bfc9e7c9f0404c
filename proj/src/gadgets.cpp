#include "xqp/gadgets.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <random>

#include <gsl/gsl_multifit_nlinear.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_vector.h>

#include "xqp/errors.hpp"
#include "xqp/simulate.hpp"

namespace xqp {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<GateEvent> emit_gadget(const GadgetPlan& plan) {
    if (plan.segments < 1) throw InvalidArgument("gadget: segments must be >= 1");
    const std::size_t need = plan.reuse_ancillae ? 1 : static_cast<std::size_t>(plan.segments);
    if (plan.ancillae.size() != need)
        throw InvalidArgument("gadget: expected " + std::to_string(need) + " ancilla pairs");
    const double step = plan.theta / plan.segments;
    if (std::abs(std::cos(step)) < 1e-12)
        throw DegenerateAngle("gadget: theta/N is an odd multiple of pi/2; split the rotation");
    std::vector<GateEvent> ev;
    ev.reserve(4 * plan.segments);
    for (int s = 0; s < plan.segments; ++s) {
        const auto [a0, a1] = plan.ancillae[plan.reuse_ancillae ? 0 : s];
        if (a0 == plan.target || a1 == plan.target || a0 == a1)
            throw InvalidArgument("gadget: ancillae must differ from each other and the target");
        ev.push_back(GateEvent::exchange(plan.target, a0, step));
        ev.push_back(GateEvent::post(a0, 0));
        ev.push_back(GateEvent::exchange(plan.target, a1, -step));
        ev.push_back(GateEvent::post(a1, 1));
    }
    return ev;
}

double segmented_success_probability(double theta, int segments) {
    if (segments < 1) throw InvalidArgument("segments must be >= 1");
    return std::pow(std::cos(theta / segments), 2 * segments);
}

CircuitBuilder::CircuitBuilder(const BasisState& data_input, SMode mode, bool reuse_ancillae)
    : data_qubits_(data_input.n()), mode_(mode), reuse_(reuse_ancillae) {
    for (int q = 0; q < data_qubits_; ++q) bits_.push_back(data_input.bit(q));
}

std::pair<int, int> CircuitBuilder::allocate_pair() {
    if (reuse_ && reusable_.first >= 0) return reusable_;
    const int a0 = qubits();
    bits_.push_back(0);
    bits_.push_back(1);
    if (qubits() > kMaxQubits) throw CapExceeded("circuit builder: too many ancillae");
    std::pair<int, int> p{a0, a0 + 1};
    if (reuse_) reusable_ = p;
    return p;
}

void CircuitBuilder::exchange(int i, int j, double theta) { events_.push_back(GateEvent::exchange(i, j, theta)); }

void CircuitBuilder::s(int i, bool dagger) {
    if (mode_ == SMode::Primitive) {
        events_.push_back(dagger ? GateEvent::sdg(i) : GateEvent::s(i));
        return;
    }
    // exp(i 3pi/4 Z) = e^{3i pi/4} S and exp(i pi/4 Z) = e^{i pi/4} S^dagger.
    gadget(i, dagger ? kPi / 4 : 3 * kPi / 4, 1);
}

void CircuitBuilder::gadget(int target, double theta, int segments) {
    GadgetPlan plan;
    plan.target = target;
    plan.theta = theta;
    plan.segments = segments;
    plan.reuse_ancillae = reuse_;
    const int pairs = reuse_ ? 1 : segments;
    for (int s = 0; s < pairs; ++s) plan.ancillae.push_back(allocate_pair());
    append(emit_gadget(plan));
    ++gadget_count_;
    expected_p_ *= segmented_success_probability(theta, segments);
}

void CircuitBuilder::postselect(int i, int bit) { events_.push_back(GateEvent::post(i, bit)); }
void CircuitBuilder::measure(int i) { events_.push_back(GateEvent::meas(i)); }

void CircuitBuilder::append(const std::vector<GateEvent>& events) {
    events_.insert(events_.end(), events.begin(), events.end());
}

Circuit CircuitBuilder::build() const {
    std::uint64_t packed = 0;
    for (int b : bits_) packed = (packed << 1) | static_cast<std::uint64_t>(b);
    Circuit c = make_circuit(BasisState(qubits(), packed), events_);
    c.validate();
    return c;
}

LogicalGate parse_logical_gate(const std::string& name) {
    if (name == "X_L" || name == "X") return LogicalGate::X;
    if (name == "Z_L" || name == "Z") return LogicalGate::Z;
    if (name == "H_L" || name == "H") return LogicalGate::H;
    if (name == "S_L" || name == "S") return LogicalGate::S;
    if (name == "CZ_L" || name == "CZ") return LogicalGate::CZ;
    if (name == "CS_L" || name == "CS") return LogicalGate::CS;
    throw InvalidArgument("unknown logical gate '" + name + "'");
}

namespace {

// H_L = S^dagger_a U_ab(pi/4) S_b on the pair (a, b).
void logical_h(CircuitBuilder& b, int q0, int q1, bool inverse) {
    if (!inverse) {
        b.s(q1);
        b.exchange(q0, q1, kPi / 4);
        b.s(q0, true);
    } else {
        b.s(q0);
        b.exchange(q0, q1, -kPi / 4);
        b.s(q1, true);
    }
}

// S_L = H_L^dagger U(3pi/4) H_L on the pair (a, b).
void logical_s(CircuitBuilder& b, int q0, int q1) {
    logical_h(b, q0, q1, false);
    b.exchange(q0, q1, 3 * kPi / 4);
    logical_h(b, q0, q1, true);
}

void logical_cs(CircuitBuilder& b, int inner0, int inner1) {
    b.exchange(inner0, inner1, kPi / 2);
    logical_s(b, inner0, inner1);
    b.exchange(inner0, inner1, -kPi / 2);
}

}  // namespace

std::vector<GateEvent> build_logical_gate(CircuitBuilder& b, LogicalGate gate,
                                          const std::vector<std::pair<int, int>>& targets) {
    const std::size_t start = b.events().size();
    const bool two = gate == LogicalGate::CZ || gate == LogicalGate::CS;
    if (targets.size() != (two ? 2u : 1u))
        throw InvalidArgument("build_logical_gate: wrong number of logical registers");
    const auto [a0, a1] = targets[0];
    switch (gate) {
        case LogicalGate::X: b.exchange(a0, a1, kPi / 2); break;
        case LogicalGate::Z:
            logical_h(b, a0, a1, false);
            b.exchange(a0, a1, kPi / 2);
            logical_h(b, a0, a1, true);
            break;
        case LogicalGate::H: logical_h(b, a0, a1, false); break;
        case LogicalGate::Hdg: logical_h(b, a0, a1, true); break;
        case LogicalGate::S: logical_s(b, a0, a1); break;
        case LogicalGate::CS: logical_cs(b, a1, targets[1].first); break;
        case LogicalGate::CZ:
            logical_cs(b, a1, targets[1].first);
            logical_cs(b, a1, targets[1].first);
            break;
    }
    return {b.events().begin() + static_cast<std::ptrdiff_t>(start), b.events().end()};
}

std::vector<GateEvent> dfs3_prepare(CircuitBuilder& b, int m, int first) {
    const std::size_t start = b.events().size();
    for (int t = 0; t < m; ++t) {
        const int q = first + 3 * t;
        b.exchange(q, q + 1, kPi / 4);
        b.s(q);
    }
    return {b.events().begin() + static_cast<std::ptrdiff_t>(start), b.events().end()};
}

std::vector<GateEvent> dfs3_decode_rotation(CircuitBuilder& b, int m, int first) {
    const std::size_t start = b.events().size();
    for (int t = 0; t < m; ++t) {
        const int q = first + 3 * t;
        b.s(q);
        b.exchange(q, q + 1, kPi / 4);
    }
    return {b.events().begin() + static_cast<std::ptrdiff_t>(start), b.events().end()};
}

std::string dfs3_measure_decode(const std::string& physical_bits) {
    if (physical_bits.size() % 3 != 0) throw InvalidArgument("dfs3_measure_decode: length must be a multiple of 3");
    std::string out;
    for (std::size_t t = 0; t < physical_bits.size(); t += 3) {
        const char mid = physical_bits[t + 1];
        if (mid != '0' && mid != '1') throw InvalidArgument("dfs3_measure_decode: invalid bit");
        out.push_back(mid == '1' ? '0' : '1');
    }
    return out;
}

namespace {

constexpr int kBellAngles = 28;
constexpr int kBellPairs[5][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}};

MultiSectorState logical_dfs3_state(int a, int b) {
    const double s2 = 1 / std::sqrt(2.0), s6 = 1 / std::sqrt(6.0);
    auto one = [&](int v) {
        std::vector<std::pair<std::string, double>> t;
        if (v == 0) t = {{"010", s2}, {"100", -s2}};
        else t = {{"001", 2 * s6}, {"010", -s6}, {"100", -s6}};
        return t;
    };
    MultiSectorState st(6);
    for (const auto& [x, ax] : one(a))
        for (const auto& [y, ay] : one(b)) {
            BasisState s = BasisState::from_string(x + y);
            st.sector(s.weight()).at(s) += ax * ay;
        }
    return st;
}

std::vector<GateEvent> bell_events(const double* angles) {
    std::vector<GateEvent> ev;
    for (int k = 0; k < kBellAngles; ++k)
        ev.push_back(GateEvent::exchange(kBellPairs[k % 5][0], kBellPairs[k % 5][1], angles[k]));
    return ev;
}

struct BellFitData {
    MultiSectorState start;
    std::vector<cplx> target;
};

int bell_residual(const gsl_vector* x, void* params, gsl_vector* f) {
    const auto* d = static_cast<const BellFitData*>(params);
    std::vector<double> ang(kBellAngles);
    for (int k = 0; k < kBellAngles; ++k) ang[k] = gsl_vector_get(x, k);
    const cplx phase = std::polar(1.0, gsl_vector_get(x, kBellAngles));
    const auto res = run_events(d->start, bell_events(ang.data()), Exec::Serial);
    const auto& a = res.state.sectors().at(2).amplitudes();
    for (std::size_t r = 0; r < a.size(); ++r) {
        const cplx diff = a[r] - phase * d->target[r];
        gsl_vector_set(f, 2 * r, diff.real());
        gsl_vector_set(f, 2 * r + 1, diff.imag());
    }
    return GSL_SUCCESS;
}

DFS3BellSynthesis synthesize_bell() {
    BellFitData data{logical_dfs3_state(0, 0), {}};
    auto target = logical_dfs3_state(0, 0);
    const auto t11 = logical_dfs3_state(1, 1);
    for (std::size_t r = 0; r < target.sector(2).size(); ++r)
        data.target.push_back((target.sector(2).amplitudes()[r] + t11.sectors().at(2).amplitudes()[r]) /
                              std::sqrt(2.0));
    const std::size_t nres = 2 * data.target.size();
    const std::size_t npar = kBellAngles + 1;

    gsl_multifit_nlinear_fdf fdf;
    fdf.f = bell_residual;
    fdf.df = nullptr;
    fdf.fvv = nullptr;
    fdf.n = nres;
    fdf.p = npar;
    fdf.params = &data;
    gsl_multifit_nlinear_parameters fp = gsl_multifit_nlinear_default_parameters();

    gsl_set_error_handler_off();
    DFS3BellSynthesis best;
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int attempt = 0; attempt < 20 && best.infidelity > 1e-13; ++attempt) {
        gsl_multifit_nlinear_workspace* w =
            gsl_multifit_nlinear_alloc(gsl_multifit_nlinear_trust, &fp, nres, npar);
        gsl_vector* x0 = gsl_vector_alloc(npar);
        for (std::size_t k = 0; k < npar; ++k) gsl_vector_set(x0, k, u(rng));
        gsl_multifit_nlinear_init(x0, &fdf, w);
        int info = 0;
        gsl_multifit_nlinear_driver(500, 1e-15, 1e-15, 1e-15, nullptr, nullptr, &info, w);
        const gsl_vector* x = gsl_multifit_nlinear_position(w);
        std::vector<double> ang(kBellAngles);
        for (int k = 0; k < kBellAngles; ++k) ang[k] = gsl_vector_get(x, k);
        auto ev = bell_events(ang.data());
        const auto out = run_events(data.start, ev, Exec::Serial).state;
        cplx ov{0, 0};
        const auto& a = out.sectors().at(2).amplitudes();
        for (std::size_t r = 0; r < a.size(); ++r) ov += std::conj(data.target[r]) * a[r];
        const double infid = 1 - std::norm(ov);
        if (infid < best.infidelity) {
            best.infidelity = infid;
            best.events = std::move(ev);
        }
        gsl_vector_free(x0);
        gsl_multifit_nlinear_free(w);
    }
    return best;
}

}  // namespace

const DFS3BellSynthesis& dfs3_bell_synthesis() {
    static const DFS3BellSynthesis cached = synthesize_bell();
    return cached;
}

Circuit dfs3_bell_circuit(SMode mode, bool reuse_ancillae) {
    CircuitBuilder b(BasisState::from_string("010010"), mode, reuse_ancillae);
    dfs3_prepare(b, 2);
    b.append(dfs3_bell_synthesis().events);
    dfs3_decode_rotation(b, 2);
    for (int q = 0; q < 6; ++q) b.measure(q);
    return b.build();
}

}  // namespace xqp
