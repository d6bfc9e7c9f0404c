#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xqp/diagnostics.hpp"
#include "xqp/entanglement.hpp"
#include "xqp/errors.hpp"
#include "xqp/gadgets.hpp"
#include "xqp/parallel.hpp"
#include "xqp/potts.hpp"
#include "xqp/schur.hpp"
#include "xqp/simulate.hpp"
#include "xqp/vertex.hpp"
#include "xqp/walks.hpp"

#ifndef XQPKIT_FIXTURE_DIR
#define XQPKIT_FIXTURE_DIR "tools/fixtures"
#endif

using json = nlohmann::json;
using namespace xqp;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240601;

// Malformed command-line values; mapped to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Global {
    bool json = false;
    int threads = 0;
};

std::string num(double v, int digits = 15) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string cnum(cplx z, int digits = 15) { return num(z.real(), digits) + "," + num(z.imag(), digits); }

json cjson(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::string spin_label(int two_j) {
    return two_j % 2 ? std::to_string(two_j) + "/2" : std::to_string(two_j / 2);
}

double angle_arg(const std::string& text, const char* what) {
    try {
        return parse_angle(text);
    } catch (const ParseError& e) {
        throw UsageError(std::string(what) + ": " + e.what());
    }
}

BasisState bits_arg(const std::string& text, const char* what) {
    try {
        return BasisState::from_string(text);
    } catch (const Error& e) {
        throw UsageError(std::string(what) + ": " + e.what());
    }
}

YamanouchiSymbol symbol_arg(const std::string& text, int n) {
    if (static_cast<int>(text.size()) != n) throw UsageError("symbol '" + text + "' does not have length n");
    if (!YamanouchiSymbol::is_valid(text)) throw UsageError("'" + text + "' is not a valid Yamanouchi symbol");
    return YamanouchiSymbol(text);
}

void emit(const Global& g, const json& j, const std::string& text) {
    if (g.json)
        std::cout << j.dump() << '\n';
    else
        std::cout << text;
}

// --- run / amplitude / sample -------------------------------------------------

struct CircuitArgs {
    std::string circuit;
    std::string out;
    bool path_sum = false;
    bool vertex = false;
    std::uint64_t shots = 1000;
    std::uint64_t seed = kDefaultSeed;
    double cutoff = 1e-14;
};

void cmd_run(const Global& g, const CircuitArgs& a) {
    const Circuit c = load_circuit(a.circuit);
    const RunResult r = run_circuit(c);
    json amps = json::array();
    std::ostringstream t;
    t << "qubits " << c.n << "\nevents " << c.events.size() << "\nsuccess_probability "
      << num(r.success_probability) << '\n';
    for (std::size_t k = 0; k < r.postselect_probabilities.size(); ++k)
        t << "postselect[" << k << "] " << num(r.postselect_probabilities[k]) << '\n';
    t << "# bitstring re,im\n";
    std::map<std::string, cplx> sorted;
    for (const auto& [w, sec] : r.state.sectors())
        for (std::size_t i = 0; i < sec.size(); ++i)
            if (std::abs(sec.amplitudes()[i]) > a.cutoff)
                sorted[bits_to_string(sec.index().strings[i], c.n)] = sec.amplitudes()[i];
    for (const auto& [k, z] : sorted) {
        t << k << ' ' << cnum(z) << '\n';
        amps.push_back({{"bitstring", k}, {"re", z.real()}, {"im", z.imag()}});
    }
    emit(g,
         {{"command", "run"},
          {"qubits", c.n},
          {"success_probability", r.success_probability},
          {"postselect_probabilities", r.postselect_probabilities},
          {"amplitudes", amps}},
         t.str());
}

void cmd_amplitude(const Global& g, const CircuitArgs& a) {
    const Circuit c = load_circuit(a.circuit);
    const BasisState out = bits_arg(a.out, "--out");
    if (out.n() != c.n) throw UsageError("--out has " + std::to_string(out.n()) + " bits, circuit has " +
                                         std::to_string(c.n));
    cplx z;
    std::string method = "sector";
    if (a.path_sum) {
        z = amplitude_path_sum(c, out);
        method = "path-sum";
    } else if (a.vertex) {
        z = partition_bruteforce(circuit_to_lattice(c, c.input.base, out));
        method = "vertex";
    } else {
        z = amplitude(c, out);
    }
    emit(g, {{"command", "amplitude"}, {"method", method}, {"out", a.out}, {"amplitude", cjson(z)}},
         cnum(z, 17) + '\n');
}

void cmd_sample(const Global& g, const CircuitArgs& a) {
    const Circuit c = load_circuit(a.circuit);
    const Histogram h = sample_outputs(c, a.shots, a.seed);
    if (g.json) {
        json counts = json::object();
        for (const auto& [k, v] : h.counts) counts[k] = v;
        emit(g, {{"command", "sample"}, {"shots", h.shots}, {"seed", a.seed}, {"qubits", h.qubits}, {"counts", counts}},
             "");
        return;
    }
    std::cout << "# seed=" << a.seed << " shots=" << h.shots << '\n' << h.to_csv();
}

// --- gadget -------------------------------------------------------------------

struct GadgetArgs {
    std::string theta;
    int segments = 1;
    bool trace = false;
    bool reuse = false;
    std::string state = "+";
};

std::pair<cplx, cplx> named_qubit_state(const std::string& s) {
    const double r = 1 / std::sqrt(2.0);
    if (s == "0") return {1, 0};
    if (s == "1") return {0, 1};
    if (s == "+") return {r, r};
    if (s == "-") return {r, -r};
    if (s == "+i") return {r, cplx(0, r)};
    if (s == "-i") return {r, cplx(0, -r)};
    throw UsageError("--state must be one of 0, 1, +, -, +i, -i");
}

void cmd_gadget(const Global& g, const GadgetArgs& a) {
    const double theta = angle_arg(a.theta, "--theta");
    if (a.segments < 1) throw UsageError("--segments must be positive");
    const auto [alpha, beta] = named_qubit_state(a.state);

    CircuitBuilder b(BasisState(1, 0), SMode::Gadget, a.reuse);
    b.gadget(0, theta, a.segments);
    const Circuit c = b.build();

    // Data qubit is the leading bit; ancillae keep their prepared values.
    MultiSectorState init(c.n);
    const std::uint64_t anc_bits = c.input.base.bits() & ((std::uint64_t{1} << (c.n - 1)) - 1);
    for (int v = 0; v < 2; ++v) {
        const cplx amp = v ? beta : alpha;
        if (amp == cplx{0, 0}) continue;
        const BasisState x(c.n, (static_cast<std::uint64_t>(v) << (c.n - 1)) | anc_bits);
        init.sector(x.weight()).at(x) = amp;
    }
    const RunResult r = run_events(init, c.events);
    cplx out[2] = {0, 0};
    for (const auto& [w, sec] : r.state.sectors())
        for (std::size_t i = 0; i < sec.size(); ++i) out[sec.index().strings[i] >> (c.n - 1)] += sec.amplitudes()[i];
    const cplx want[2] = {std::polar(1.0, theta) * alpha, std::polar(1.0, -theta) * beta};
    const cplx ov = std::conj(want[0]) * out[0] + std::conj(want[1]) * out[1];
    const double fid = std::norm(ov) / ((std::norm(out[0]) + std::norm(out[1])) *
                                        (std::norm(want[0]) + std::norm(want[1])));
    const double analytic = segmented_success_probability(theta, a.segments);

    std::ostringstream t;
    if (a.trace) t << format_circuit(c);
    t << "theta " << num(theta) << "\nsegments " << a.segments << "\ngadgets " << b.gadget_count()
      << "\nancillae " << b.ancilla_count() << "\nevents " << c.events.size() << "\nanalytic_probability "
      << num(analytic) << "\nsimulated_probability " << num(r.success_probability) << "\nfidelity " << num(fid)
      << '\n';
    json j = {{"command", "gadget"},
              {"theta", theta},
              {"segments", a.segments},
              {"gadgets", b.gadget_count()},
              {"ancillae", b.ancilla_count()},
              {"analytic_probability", analytic},
              {"simulated_probability", r.success_probability},
              {"fidelity", fid}};
    if (a.trace) j["circuit"] = format_circuit(c);
    emit(g, j, t.str());
}

// --- irrep --------------------------------------------------------------------

struct IrrepArgs {
    int n = 0;
    std::string bits;
    std::string from, to;
    std::string route = "direct";
    double target = 1e-3;
    bool pulses = true;
};

void cmd_irrep_decompose(const Global& g, const IrrepArgs& a) {
    const BasisState x = bits_arg(a.bits, "bitstring");
    if (x.n() != a.n) throw UsageError("bitstring length differs from --n");
    const int two_m = a.n - 2 * x.weight();
    std::ostringstream t;
    t << "# J dim k2\n";
    json rows = json::array();
    double total = 0;
    for (int two_j : allowed_two_j(a.n)) {
        if (two_j < std::abs(two_m)) continue;
        const double k2 = sector_overlap(x, two_j);
        total += k2;
        t << spin_label(two_j) << ' ' << irrep_dim(a.n, two_j) << ' ' << num(k2) << '\n';
        rows.push_back({{"J", spin_label(two_j)}, {"dim", irrep_dim(a.n, two_j)}, {"k2", k2}});
    }
    t << "M " << spin_label(two_m) << "\ntotal " << num(total) << '\n';
    emit(g, {{"command", "irrep decompose"}, {"bitstring", a.bits}, {"M", spin_label(two_m)}, {"overlaps", rows}},
         t.str());
}

void cmd_irrep_walk(const Global& g, const IrrepArgs& a) {
    const YamanouchiSymbol from = symbol_arg(a.from, a.n), to = symbol_arg(a.to, a.n);
    WalkRoute route;
    if (a.route == "direct")
        route = WalkRoute::Direct;
    else if (a.route == "canonical")
        route = WalkRoute::Canonical;
    else
        throw UsageError("--route must be direct or canonical");
    const WalkPlan p = plan_walk(from, to, route, a.target);

    std::ostringstream t;
    t << "length " << p.steps.size() << '\n' << "# step t symbol_after D phase trotter_steps\n";
    json steps = json::array();
    for (std::size_t k = 0; k < p.steps.size(); ++k) {
        t << k << ' ' << p.steps[k] << ' ' << p.symbols[k + 1].rows() << ' ' << p.axial_distances[k] << ' '
          << cnum(p.phases[k], 12) << ' ' << p.trotter_steps[k] << '\n';
        steps.push_back({{"t", p.steps[k]},
                         {"symbol", p.symbols[k + 1].rows()},
                         {"axial_distance", p.axial_distances[k]},
                         {"phase", cjson(p.phases[k])},
                         {"trotter_steps", p.trotter_steps[k]}});
    }
    t << "pulses " << p.pulses.size() << '\n';
    json pulses = json::array();
    if (a.pulses)
        for (const auto& e : p.pulses) {
            t << "X " << e.i << ' ' << e.j << ' ' << format_angle(e.theta) << '\n';
            pulses.push_back({e.i, e.j, e.theta});
        }
    json j = {{"command", "irrep walk"}, {"from", a.from}, {"to", a.to}, {"route", a.route}, {"steps", steps},
              {"pulse_count", p.pulses.size()}};
    if (a.pulses) j["pulses"] = pulses;
    emit(g, j, t.str());
}

// --- epower -------------------------------------------------------------------

struct EpowerArgs {
    std::string theta;
    std::uint64_t mc = 0;
    std::uint64_t seed = kDefaultSeed;
    bool search = false;
    std::string sweep;
    std::string csv;
};

void cmd_epower(const Global& g, const EpowerArgs& a) {
    if (!a.sweep.empty()) {
        std::vector<std::string> parts;
        std::stringstream ss(a.sweep);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw UsageError("--sweep expects start:stop:step");
        const double start = angle_arg(parts[0], "--sweep"), stop = angle_arg(parts[1], "--sweep"),
                     step = angle_arg(parts[2], "--sweep");
        if (!(step > 0) || stop < start) throw UsageError("--sweep needs step > 0 and stop >= start");
        const auto curve = entangling_power_sweep(start, stop, step);
        std::ostringstream csv;
        csv << "theta,e_p\n";
        for (const auto& [th, e] : curve) csv << num(th, 17) << ',' << num(e, 17) << '\n';
        if (!a.csv.empty()) {
            std::ofstream f(a.csv);
            if (!f) throw InvalidArgument("cannot write '" + a.csv + "'");
            f << csv.str();
            emit(g, {{"command", "epower sweep"}, {"points", curve.size()}, {"csv", a.csv}},
                 "points " + std::to_string(curve.size()) + "\ncsv " + a.csv + '\n');
        } else if (g.json) {
            json pts = json::array();
            for (const auto& [th, e] : curve) pts.push_back({th, e});
            emit(g, {{"command", "epower sweep"}, {"points", pts}}, "");
        } else {
            std::cout << csv.str();
        }
        return;
    }
    if (a.theta.empty()) throw UsageError("epower needs --theta or --sweep");
    const double theta = angle_arg(a.theta, "--theta");
    const TwoQubitGate u = TwoQubitGate::exchange(theta);
    const double exact = entangling_power_exact(u);
    const double closed = (1 - std::cos(4 * theta)) / 12;
    std::ostringstream t;
    t << "theta " << num(theta) << "\nexact " << num(exact) << "\nclosed_form " << num(closed) << '\n';
    json j = {{"command", "epower"}, {"theta", theta}, {"exact", exact}, {"closed_form", closed}};
    if (a.mc > 0) {
        const MonteCarloEstimate m = entangling_power_mc(u, a.mc, a.seed);
        t << "mc_samples " << m.samples << "\nmc_seed " << a.seed << "\nmc_mean " << num(m.mean) << "\nmc_stderr "
          << num(m.std_error) << "\nmc_deviation_sigmas "
          << num(m.std_error > 0 ? (m.mean - exact) / m.std_error : 0.0, 6) << '\n';
        j["mc"] = {{"samples", m.samples}, {"seed", a.seed}, {"mean", m.mean}, {"stderr", m.std_error}};
    }
    if (a.search) {
        const MaxEntanglement m = max_entangling_power(theta, true);
        t << "max_linear_entropy " << num(m.value) << "\nsearch_max " << num(m.search_max) << '\n';
        j["max_linear_entropy"] = m.value;
        j["search_max"] = m.search_max;
    }
    emit(g, j, t.str());
}

// --- vertex / potts -----------------------------------------------------------

struct VertexArgs {
    std::string lattice;
    bool bruteforce = false;
    bool dwbc = false;
    int cap = kDefaultVertexCap;
};

void cmd_vertex_z(const Global& g, const VertexArgs& a) {
    const LatticeFile f = load_lattice(a.lattice);
    std::ostringstream t;
    json j = {{"command", "vertex z"}, {"lattice", a.lattice}};
    const bool want_dwbc = a.dwbc;
    const bool want_bf = a.bruteforce || !a.dwbc;
    std::optional<cplx> z_ik, z_bf;
    if (want_dwbc) {
        if (!f.dwbc_lambda) throw InvalidArgument("--dwbc needs a 'dwbc' line in the lattice file");
        const SpectralGrid grid{*f.dwbc_lambda, *f.dwbc_nu};
        std::string method = "determinant";
        try {
            z_ik = dwbc_determinant(grid);
        } catch (const DegenerateSpectralParameters&) {
            z_ik = dwbc_determinant_limit(grid);
            method = "limit";
        }
        t << "z_determinant " << cnum(*z_ik, 17) << "\nmethod " << method << '\n';
        j["z_determinant"] = cjson(*z_ik);
        j["method"] = method;
    }
    if (want_bf) {
        z_bf = partition_bruteforce(f.lattice, a.cap);
        t << "z_bruteforce " << cnum(*z_bf, 17) << '\n';
        j["z_bruteforce"] = cjson(*z_bf);
    }
    if (z_ik && z_bf) {
        t << "difference " << num(std::abs(*z_ik - *z_bf), 6) << '\n';
        j["difference"] = std::abs(*z_ik - *z_bf);
    }
    emit(g, j, t.str());
}

struct PottsArgs {
    int w = 2, h = 2;
    double q = 4;
    std::string theta_h, theta_v;
    bool periodic = false;
    bool oracle = false;
    bool swap_network = false;
    int cap = kDefaultPottsEdgeCap;
};

void cmd_potts(const Global& g, const PottsArgs& a) {
    if (a.w < 1 || a.h < 1) throw UsageError("--w and --h must be positive");
    const double th = angle_arg(a.theta_h, "--theta-h"), tv = angle_arg(a.theta_v, "--theta-v");
    const bool circuit_route = a.q == 4;
    std::ostringstream t;
    json j = {{"command", "potts"}, {"w", a.w}, {"h", a.h}, {"q", a.q}, {"periodic_h", a.periodic}};
    const PottsLattice lat = PottsLattice::from_angles(a.w, a.h, th, tv, a.periodic);
    t << "v_h " << cnum(lat.v_h) << "\nv_v " << cnum(lat.v_v) << '\n';
    std::optional<cplx> zc, zf;
    if (circuit_route) {
        const PottsCircuit pc = potts_circuit(a.w, a.h, th, tv, a.periodic, a.swap_network);
        zc = potts_from_circuit(pc);
        t << "qubits " << pc.circuit.n << "\ngates " << pc.circuit.events.size() << "\nz_circuit "
          << cnum(*zc, 17) << '\n';
        j["qubits"] = pc.circuit.n;
        j["z_circuit"] = cjson(*zc);
    }
    if (a.oracle || !circuit_route) {
        zf = potts_fk_bruteforce(lat, a.q, a.cap);
        t << "z_fk " << cnum(*zf, 17) << '\n';
        j["z_fk"] = cjson(*zf);
    }
    if (zc && zf) {
        t << "difference " << num(std::abs(*zc - *zf), 6) << '\n';
        j["difference"] = std::abs(*zc - *zf);
    }
    emit(g, j, t.str());
}

// --- verify -------------------------------------------------------------------

struct SuiteResult {
    std::string name;
    int cases = 0;
    double max_error = 0;
    double tolerance = 0;
    std::string note;
    bool passed() const { return note.empty() && max_error <= tolerance; }
};

// Random exchange circuit on 2..6 qubits. With `quarter` set, angles are
// multiples of pi/4 and the total sqrt(SWAP) factor count is at most 12;
// otherwise up to 12 gates with uniform angles.
Circuit random_circuit(std::mt19937_64& rng, bool quarter) {
    std::uniform_int_distribution<int> nq(2, 6), budget_dist(1, 12);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    const int n = nq(rng);
    std::uniform_int_distribution<int> q(0, n - 1);
    std::uint64_t bits = 0;
    for (int b = 0; b < n; ++b) bits = (bits << 1) | static_cast<std::uint64_t>(rng() & 1u);
    std::vector<GateEvent> ev;
    for (int budget = budget_dist(rng); budget > 0;) {
        const int a = q(rng);
        int b = q(rng);
        while (b == a) b = q(rng);
        if (quarter) {
            const int k = std::uniform_int_distribution<int>(1, std::min(7, budget))(rng);
            ev.push_back(GateEvent::exchange(a, b, k * std::numbers::pi / 4));
            budget -= k;
        } else {
            ev.push_back(GateEvent::exchange(a, b, ang(rng)));
            --budget;
        }
    }
    return make_circuit(BasisState(n, bits), std::move(ev));
}

// Every output string in the input's weight sector.
std::vector<BasisState> sector_outputs(const Circuit& c) {
    std::vector<BasisState> out;
    for (std::uint64_t s : enumerate_fixed_weight(c.n, c.input.base.weight())) out.emplace_back(c.n, s);
    return out;
}

std::vector<SuiteResult> run_verify(const std::string& level, const std::string& dir, std::uint64_t seed) {
    const bool full = level == "full";
    const int randoms = full ? 200 : 20;
    std::vector<SuiteResult> results;
    auto guarded = [&](SuiteResult s, const std::function<void(SuiteResult&)>& body) {
        try {
            body(s);
        } catch (const Error& e) {
            s.note = e.kind() + ": " + e.what();
        }
        results.push_back(s);
    };

    guarded({"amplitude-vs-path-sum", 0, 0, 1e-10, ""}, [&](SuiteResult& s) {
        std::vector<Circuit> cs{load_circuit(dir + "/sqrt_swap_ring.xqp")};
        std::mt19937_64 rng(seed);
        for (int i = 0; i < randoms; ++i) cs.push_back(random_circuit(rng, true));
        for (const auto& c : cs)
            for (const auto& y : sector_outputs(c)) {
                s.max_error = std::max(s.max_error, std::abs(amplitude(c, y) - amplitude_path_sum(c, y)));
                ++s.cases;
            }
    });
    guarded({"amplitude-vs-vertex", 0, 0, 1e-10, ""}, [&](SuiteResult& s) {
        std::vector<Circuit> cs{load_circuit(dir + "/sqrt_swap_ring.xqp"), load_circuit(dir + "/mixed_angles.xqp")};
        std::mt19937_64 rng(seed + 1);
        for (int i = 0; i < randoms; ++i) cs.push_back(random_circuit(rng, false));
        for (const auto& c : cs)
            for (const auto& y : sector_outputs(c)) {
                const cplx z = partition_bruteforce(circuit_to_lattice(c, c.input.base, y));
                s.max_error = std::max(s.max_error, std::abs(amplitude(c, y) - z));
                ++s.cases;
            }
    });
    guarded({"lattice-fixtures", 0, 0, 1e-9, ""}, [&](SuiteResult& s) {
        const LatticeFile d = load_lattice(dir + "/dwbc_m3.lat");
        const SpectralGrid grid{*d.dwbc_lambda, *d.dwbc_nu};
        s.max_error = std::abs(dwbc_determinant(grid) - partition_bruteforce(d.lattice));
        const Circuit dc = dwbc_circuit(grid);
        const cplx amp = amplitude(dc, dwbc_boundary(grid.m()));
        s.max_error = std::max(s.max_error, std::abs(amp - dwbc_prefactor(grid) * dwbc_determinant(grid)));
        s.cases = 2;
        // A free output boundary must equal the sum over every fixed output.
        for (const char* name : {"/free_out.lat", "/four_wire.lat"}) {
            VertexLattice l = load_lattice(dir + name).lattice;
            for (auto& b : l.out) b.reset();
            const cplx free_z = partition_bruteforce(l);
            cplx summed = 0;
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << l.wires); ++y) {
                VertexLattice fixed = l;
                for (int q = 0; q < l.wires; ++q) fixed.out[q] = BasisState(l.wires, y).bit(q);
                summed += partition_bruteforce(fixed);
            }
            s.max_error = std::max(s.max_error, std::abs(free_z - summed));
            ++s.cases;
        }
    });
    guarded({"potts-vs-fk", 0, 0, 1e-8, ""}, [&](SuiteResult& s) {
        std::mt19937_64 rng(seed + 2);
        std::uniform_real_distribution<double> ang(0.15, 1.4);
        std::vector<std::pair<int, int>> shapes{{2, 2}, {3, 2}, {2, 3}};
        if (full) shapes.insert(shapes.end(), {{3, 3}, {4, 2}});
        const int draws = full ? 5 : 2;
        for (auto [w, h] : shapes)
            for (bool periodic : {false, true})
                for (int d = 0; d < draws; ++d) {
                    double th = ang(rng), tv = ang(rng);
                    if (std::abs(th - tv) < 1e-3) tv += 0.1;
                    const PottsCircuit pc = potts_circuit(w, h, th, tv, periodic);
                    const cplx zc = potts_from_circuit(pc);
                    const cplx zf = potts_fk_bruteforce(pc.lattice, 4.0);
                    s.max_error = std::max(s.max_error, std::abs(zc - zf) / std::max(1.0, std::abs(zf)));
                    ++s.cases;
                }
    });
    guarded({"gadget-probability", 0, 0, 1e-10, ""}, [&](SuiteResult& s) {
        for (double theta : {0.2, 0.7, -1.1, 2.5})
            for (int segments : {1, 2, 4, 8, 16}) {
                CircuitBuilder b(BasisState::from_string("0"), SMode::Gadget, true);
                b.gadget(0, theta, segments);
                const double p = run_circuit(b.build()).success_probability;
                s.max_error = std::max(s.max_error, std::abs(p - segmented_success_probability(theta, segments)));
                ++s.cases;
            }
    });
    return results;
}

void cmd_verify(const Global& g, const std::string& level, const std::string& dir, std::uint64_t seed,
                bool& all_passed) {
    if (level != "quick" && level != "full") throw UsageError("--level must be quick or full");
    const auto results = run_verify(level, dir, seed);
    all_passed = true;
    std::ostringstream t;
    char line[160];
    std::snprintf(line, sizeof line, "%-22s %6s %12s %10s  %s\n", "suite", "cases", "max_error", "tolerance",
                  "status");
    t << line;
    json rows = json::array();
    for (const auto& r : results) {
        all_passed = all_passed && r.passed();
        std::snprintf(line, sizeof line, "%-22s %6d %12.3e %10.1e  %s\n", r.name.c_str(), r.cases, r.max_error,
                      r.tolerance, r.passed() ? "PASS" : "FAIL");
        t << line;
        if (!r.note.empty()) t << "  " << r.note << '\n';
        rows.push_back({{"suite", r.name},
                        {"cases", r.cases},
                        {"max_error", r.max_error},
                        {"tolerance", r.tolerance},
                        {"passed", r.passed()},
                        {"note", r.note}});
    }
    emit(g, {{"command", "verify"}, {"level", level}, {"seed", seed}, {"suites", rows}, {"passed", all_passed}},
         t.str());
}

constexpr const char* kFormats = R"(
Circuit files (.xqp):
  n=<int> input=<bits | singlets:<i-j,...> base=<bits>> [family=pi/4]
  X i j <angle>    exchange exp(i theta SWAP_ij)
  S i | SDG i      single-qubit phase
  POST i b         postselect qubit i on bit b
  MEAS i           record qubit i in the output
  Angles: pi/4, 3pi/4, -pi/2, or decimals. '#' starts a comment.

Lattice files (.lat):
  wires N
  in 01*1          boundary bits, '*' = free
  out 0110
  vertex I J theta=<angle>
  vertex I J a1=re,im a2=.. b1=.. b2=.. c1=.. c2=..
  dwbc lambda=l1,l2,... nu=n1,n2,...   (replaces the lines above)
)";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"xqpkit: exchange-only circuit simulation and diagnostics"};
    app.footer(kFormats);
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_flag("--json", g.json, "Machine-readable JSON output");
    app.add_option("--threads", g.threads, "Worker threads for module kernels")
        ->envname("XQPKIT_THREADS")
        ->check(CLI::PositiveNumber);

    CircuitArgs ca;
    auto* run = app.add_subcommand("run", "Simulate a circuit file and print the final amplitudes");
    run->add_option("--circuit", ca.circuit, "Circuit file")->required()->check(CLI::ExistingFile);
    run->add_option("--cutoff", ca.cutoff, "Hide amplitudes below this magnitude");

    auto* amp = app.add_subcommand("amplitude", "Print <out|U|in> as re,im");
    amp->add_option("--circuit", ca.circuit, "Circuit file")->required()->check(CLI::ExistingFile);
    amp->add_option("--out", ca.out, "Output bitstring")->required();
    auto* ps = amp->add_flag("--path-sum", ca.path_sum, "Use the sqrt(SWAP) path-sum oracle");
    amp->add_flag("--vertex", ca.vertex, "Use the six-vertex brute-force oracle")->excludes(ps);

    auto* smp = app.add_subcommand("sample", "Sample output bitstrings; prints a CSV histogram");
    smp->add_option("--circuit", ca.circuit, "Circuit file")->required()->check(CLI::ExistingFile);
    smp->add_option("--shots", ca.shots, "Number of samples")->check(CLI::PositiveNumber);
    smp->add_option("--seed", ca.seed, "RNG seed")->capture_default_str();

    GadgetArgs ga;
    auto* gad = app.add_subcommand("gadget", "Build and simulate a phase gadget exp(i theta Z)");
    gad->add_option("--theta", ga.theta, "Rotation angle")->required();
    gad->add_option("--segments", ga.segments, "Number of segments N")->capture_default_str();
    gad->add_option("--state", ga.state, "Data state: 0, 1, +, -, +i, -i")->capture_default_str();
    gad->add_flag("--trace", ga.trace, "Print the emitted event list");
    gad->add_flag("--reuse-ancillae", ga.reuse, "Reuse one ancilla pair across segments");

    IrrepArgs ia;
    auto* irr = app.add_subcommand("irrep", "Spin-sector decompositions and Yamanouchi walks");
    irr->add_option("--n", ia.n, "Number of qubits")->required()->check(CLI::Range(1, 62));
    irr->require_subcommand(1);
    irr->fallthrough();
    auto* dec = irr->add_subcommand("decompose", "Print k^2_{J,M} for each J");
    dec->add_option("bitstring", ia.bits)->required();
    auto* walk = irr->add_subcommand("walk", "Print the transposition schedule between two symbols");
    walk->add_option("from", ia.from, "Start symbol (0 = first row, 1 = second row)")->required();
    walk->add_option("to", ia.to, "Target symbol")->required();
    walk->add_option("--route", ia.route, "direct or canonical")->capture_default_str();
    walk->add_option("--trotter-target", ia.target, "Per-step Trotter infidelity")->capture_default_str();
    walk->add_flag("!--no-pulses", ia.pulses, "Omit the pulse listing");

    EpowerArgs ea;
    auto* ep = app.add_subcommand("epower", "Entangling power of the exchange gate");
    auto* th = ep->add_option("--theta", ea.theta, "Exchange angle");
    ep->add_option("--mc", ea.mc, "Monte Carlo sample count")->needs(th);
    ep->add_option("--seed", ea.seed, "Monte Carlo seed")->capture_default_str();
    ep->add_flag("--search", ea.search, "Confirm the maximum linear entropy numerically")->needs(th);
    auto* sw = ep->add_option("--sweep", ea.sweep, "start:stop:step curve")->excludes(th);
    ep->add_option("--csv", ea.csv, "Write the sweep to this file")->needs(sw);

    VertexArgs va;
    auto* vx = app.add_subcommand("vertex", "Six-vertex partition functions");
    vx->require_subcommand(1);
    vx->fallthrough();
    auto* vz = vx->add_subcommand("z", "Partition function of a lattice file");
    vz->add_option("--lattice", va.lattice, "Lattice file")->required()->check(CLI::ExistingFile);
    vz->add_flag("--bruteforce", va.bruteforce, "Enumerate configurations (default)");
    vz->add_flag("--dwbc", va.dwbc, "Use the domain-wall determinant");
    vz->add_option("--cap", va.cap, "Configuration-bit cap")->capture_default_str();

    PottsArgs pa;
    auto* pt = app.add_subcommand("potts", "Potts partition function from a circuit amplitude");
    pt->set_help_flag("--help", "Print this help message and exit");
    pt->add_option("--w", pa.w, "Lattice width")->required();
    pt->add_option("--h", pa.h, "Lattice height")->required();
    pt->add_option("--q", pa.q, "Number of Potts states")->capture_default_str();
    pt->add_option("--theta-h", pa.theta_h, "Horizontal exchange angle")->required();
    pt->add_option("--theta-v", pa.theta_v, "Vertical exchange angle")->required();
    pt->add_flag("--periodic-h", pa.periodic, "Periodic horizontal boundary");
    pt->add_flag("--swap-network", pa.swap_network, "Route the wrap-around gate through adjacent SWAPs");
    pt->add_flag("--oracle", pa.oracle, "Also enumerate FK clusters");
    pt->add_option("--cap", pa.cap, "FK edge cap")->capture_default_str();

    std::string level = "quick", fixtures = XQPKIT_FIXTURE_DIR;
    std::uint64_t verify_seed = kDefaultSeed;
    auto* vf = app.add_subcommand("verify", "Cross-check the independent oracles");
    vf->add_option("--level", level, "quick or full")->capture_default_str();
    vf->add_option("--fixtures", fixtures, "Fixture directory")->capture_default_str();
    vf->add_option("--seed", verify_seed, "Seed for random circuits")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (g.threads > 0) set_num_threads(g.threads);
        if (*run) cmd_run(g, ca);
        else if (*amp) cmd_amplitude(g, ca);
        else if (*smp) cmd_sample(g, ca);
        else if (*gad) cmd_gadget(g, ga);
        else if (*dec) cmd_irrep_decompose(g, ia);
        else if (*walk) cmd_irrep_walk(g, ia);
        else if (*ep) cmd_epower(g, ea);
        else if (*vz) cmd_vertex_z(g, va);
        else if (*pt) cmd_potts(g, pa);
        else if (*vf) {
            bool ok = false;
            cmd_verify(g, level, fixtures, verify_seed, ok);
            if (!ok) {
                std::cerr << "error VerificationFailed: at least one suite exceeded its tolerance\n";
                return 1;
            }
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        if (g.json)
            std::cerr << json{{"error", e.kind()}, {"message", e.what()}}.dump() << '\n';
        else
            std::cerr << "error " << e.kind() << ": " << e.what() << '\n';
        return 1;
    }
    return 0;
}
