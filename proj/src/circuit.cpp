#include "xqp/circuit.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "xqp/errors.hpp"

namespace xqp {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view s, const char* what) {
    std::string str(s);
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(str, &used);
    } catch (const std::exception&) {
        throw ParseError(std::string("invalid ") + what + " '" + str + "'");
    }
    if (used != str.size()) throw ParseError(std::string("invalid ") + what + " '" + str + "'");
    return v;
}

int parse_int(std::string_view s, const char* what) {
    std::string str(s);
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(str, &used);
    } catch (const std::exception&) {
        throw ParseError(std::string("invalid ") + what + " '" + str + "'");
    }
    if (used != str.size()) throw ParseError(std::string("invalid ") + what + " '" + str + "'");
    return v;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t p = 0;
    while (p < s.size()) {
        while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
        std::size_t q = p;
        while (q < s.size() && !std::isspace(static_cast<unsigned char>(s[q]))) ++q;
        if (q > p) out.push_back(s.substr(p, q - p));
        p = q;
    }
    return out;
}

void check_qubit(int q, int n, const char* what) {
    if (q < 0 || q >= n)
        throw IndexOutOfRange(std::string(what) + ": qubit " + std::to_string(q) + " out of range for n=" +
                              std::to_string(n));
}

}  // namespace

bool is_multiple_of(double theta, double unit, double tol) {
    const double k = std::round(theta / unit);
    return std::abs(theta - k * unit) <= tol;
}

double parse_angle(std::string_view text) {
    std::string_view s = trim(text);
    const auto pi_pos = s.find("pi");
    if (pi_pos == std::string_view::npos) return parse_number(s, "angle");

    std::string_view coef = s.substr(0, pi_pos);
    std::string_view rest = s.substr(pi_pos + 2);
    if (!coef.empty() && coef.back() == '*') coef.remove_suffix(1);
    double c = 1;
    if (coef == "-") c = -1;
    else if (coef == "+" || coef.empty()) c = 1;
    else c = parse_number(coef, "angle coefficient");
    double den = 1;
    if (!rest.empty()) {
        if (rest.front() != '/') throw ParseError("invalid angle '" + std::string(s) + "'");
        den = parse_number(rest.substr(1), "angle denominator");
        if (den == 0) throw ParseError("zero angle denominator");
    }
    return c * std::numbers::pi / den;
}

std::string format_angle(double theta) {
    const double k = std::round(theta / (std::numbers::pi / 4));
    if (std::abs(k) < 1e6 && k * std::numbers::pi / 4 == theta) {
        const long long ki = static_cast<long long>(k);
        if (ki == 0) return "0";
        if (ki == 1) return "pi/4";
        if (ki == -1) return "-pi/4";
        return std::to_string(ki) + "pi/4";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", theta);
    return buf;
}

void Circuit::validate() const {
    if (n < 1 || n > kMaxQubits) throw InvalidArgument("circuit: n out of range");
    if (input.base.n() != n) throw InvalidArgument("circuit: input length differs from n");
    std::vector<int> used(n, 0);
    for (const auto& [a, b] : input.singlets) {
        check_qubit(a, n, "singlet");
        check_qubit(b, n, "singlet");
        if (a == b || used[a] || used[b]) throw InvalidArgument("circuit: singlet pairs must be disjoint");
        used[a] = used[b] = 1;
    }
    for (const auto& e : events) {
        check_qubit(e.i, n, "event");
        if (e.kind == GateEvent::Kind::Exchange) {
            check_qubit(e.j, n, "event");
            if (e.i == e.j) throw InvalidArgument("exchange: i == j");
            if (!std::isfinite(e.theta)) throw InvalidArgument("exchange: non-finite angle");
            if (restricted_angle && !is_multiple_of(e.theta, *restricted_angle))
                throw InvalidArgument("exchange angle " + format_angle(e.theta) +
                                      " is not a multiple of the declared family " +
                                      format_angle(*restricted_angle));
        }
        if (e.kind == GateEvent::Kind::Postselect && e.bit != 0 && e.bit != 1)
            throw InvalidArgument("postselect: bit must be 0 or 1");
    }
}

bool Circuit::has_postselection() const {
    for (const auto& e : events)
        if (e.kind == GateEvent::Kind::Postselect) return true;
    return false;
}

bool Circuit::exchange_only() const {
    for (const auto& e : events)
        if (e.kind != GateEvent::Kind::Exchange && e.kind != GateEvent::Kind::MeasureRecord) return false;
    return true;
}

int Circuit::exchange_count() const {
    int c = 0;
    for (const auto& e : events) c += e.kind == GateEvent::Kind::Exchange;
    return c;
}

Circuit make_circuit(const BasisState& input, std::vector<GateEvent> events) {
    Circuit c;
    c.n = input.n();
    c.input.base = input;
    c.events = std::move(events);
    return c;
}

Circuit parse_circuit(std::string_view text) {
    Circuit c;
    bool header_seen = false;
    std::string input_spec, base_spec;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto tok = split_ws(line);
        if (tok.empty()) continue;
        auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
        if (!header_seen) {
            header_seen = true;
            for (auto t : tok) {
                auto eq = t.find('=');
                if (eq == std::string_view::npos) throw ParseError(where() + "header token without '='");
                auto key = t.substr(0, eq), val = t.substr(eq + 1);
                if (key == "n") c.n = parse_int(val, "n");
                else if (key == "input") input_spec = std::string(val);
                else if (key == "base") base_spec = std::string(val);
                else if (key == "family") c.restricted_angle = parse_angle(val);
                else throw ParseError(where() + "unknown header key '" + std::string(key) + "'");
            }
            if (c.n < 1 || c.n > kMaxQubits) throw ParseError(where() + "missing or invalid n");
            if (input_spec.empty()) throw ParseError(where() + "missing input");
            if (input_spec.rfind("singlets:", 0) == 0) {
                c.input.base = base_spec.empty() ? BasisState(c.n, 0) : BasisState::from_string(base_spec);
                std::string_view pairs = std::string_view(input_spec).substr(9);
                while (!pairs.empty()) {
                    auto comma = pairs.find(',');
                    auto item = pairs.substr(0, comma);
                    auto dash = item.find('-');
                    if (dash == std::string_view::npos) throw ParseError(where() + "singlet pair needs 'i-j'");
                    c.input.singlets.emplace_back(parse_int(item.substr(0, dash), "qubit"),
                                                  parse_int(item.substr(dash + 1), "qubit"));
                    if (comma == std::string_view::npos) break;
                    pairs.remove_prefix(comma + 1);
                }
            } else {
                if (!base_spec.empty()) throw ParseError(where() + "base= only allowed with singlets input");
                c.input.base = BasisState::from_string(input_spec);
            }
            if (c.input.base.n() != c.n) throw ParseError(where() + "input length differs from n");
            continue;
        }
        const auto op = tok[0];
        auto need = [&](std::size_t k) {
            if (tok.size() != k) throw ParseError(where() + "'" + std::string(op) + "' expects " +
                                                  std::to_string(k - 1) + " arguments");
        };
        if (op == "X") {
            need(4);
            c.events.push_back(GateEvent::exchange(parse_int(tok[1], "qubit"), parse_int(tok[2], "qubit"),
                                                   parse_angle(tok[3])));
        } else if (op == "S") {
            need(2);
            c.events.push_back(GateEvent::s(parse_int(tok[1], "qubit")));
        } else if (op == "SDG") {
            need(2);
            c.events.push_back(GateEvent::sdg(parse_int(tok[1], "qubit")));
        } else if (op == "POST") {
            need(3);
            c.events.push_back(GateEvent::post(parse_int(tok[1], "qubit"), parse_int(tok[2], "bit")));
        } else if (op == "MEAS") {
            need(2);
            c.events.push_back(GateEvent::meas(parse_int(tok[1], "qubit")));
        } else {
            throw ParseError(where() + "unknown event '" + std::string(op) + "'");
        }
    }
    if (!header_seen) throw ParseError("missing header line");
    c.validate();
    return c;
}

Circuit load_circuit(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open circuit file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_circuit(ss.str());
}

std::string format_circuit(const Circuit& c) {
    std::ostringstream out;
    out << "n=" << c.n << " input=";
    if (c.input.singlets.empty()) {
        out << c.input.base.to_string();
    } else {
        out << "singlets:";
        for (std::size_t k = 0; k < c.input.singlets.size(); ++k)
            out << (k ? "," : "") << c.input.singlets[k].first << '-' << c.input.singlets[k].second;
        out << " base=" << c.input.base.to_string();
    }
    if (c.restricted_angle) out << " family=" << format_angle(*c.restricted_angle);
    out << '\n';
    for (const auto& e : c.events) {
        switch (e.kind) {
            case GateEvent::Kind::Exchange:
                out << "X " << e.i << ' ' << e.j << ' ' << format_angle(e.theta) << '\n';
                break;
            case GateEvent::Kind::SGate: out << "S " << e.i << '\n'; break;
            case GateEvent::Kind::SDagger: out << "SDG " << e.i << '\n'; break;
            case GateEvent::Kind::Postselect: out << "POST " << e.i << ' ' << e.bit << '\n'; break;
            case GateEvent::Kind::MeasureRecord: out << "MEAS " << e.i << '\n'; break;
        }
    }
    return out.str();
}

}  // namespace xqp
