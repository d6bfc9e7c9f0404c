#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xqp/basis.hpp"

namespace xqp {

/// One event of an exchange circuit.
struct GateEvent {
    enum class Kind { Exchange, SGate, SDagger, Postselect, MeasureRecord };

    Kind kind = Kind::Exchange;
    int i = 0;          ///< first qubit (or the only qubit)
    int j = -1;         ///< second qubit, Exchange only
    double theta = 0;   ///< pulse angle in radians, Exchange only
    int bit = 0;        ///< outcome to keep, Postselect only

    static GateEvent exchange(int i, int j, double theta) { return {Kind::Exchange, i, j, theta, 0}; }
    static GateEvent s(int i) { return {Kind::SGate, i, -1, 0, 0}; }
    static GateEvent sdg(int i) { return {Kind::SDagger, i, -1, 0, 0}; }
    static GateEvent post(int i, int bit) { return {Kind::Postselect, i, -1, 0, bit}; }
    static GateEvent meas(int i) { return {Kind::MeasureRecord, i, -1, 0, 0}; }

    bool operator==(const GateEvent&) const = default;
};

/// Initial state of a circuit: a basis string, optionally with some qubit
/// pairs replaced by singlets (|01> - |10>)/sqrt2 ordered (first, second).
struct InputPreparation {
    BasisState base;
    std::vector<std::pair<int, int>> singlets;

    bool operator==(const InputPreparation& o) const {
        return base == o.base && singlets == o.singlets;
    }
};

/// An ordered list of events acting on n qubits.
struct Circuit {
    int n = 0;
    InputPreparation input;
    std::vector<GateEvent> events;
    /// When set, every Exchange angle must be an integer multiple of this value.
    std::optional<double> restricted_angle;

    /// Throws InvalidArgument / IndexOutOfRange when an invariant fails.
    void validate() const;

    bool has_postselection() const;
    bool exchange_only() const;
    int exchange_count() const;

    bool operator==(const Circuit&) const = default;
};

Circuit make_circuit(const BasisState& input, std::vector<GateEvent> events = {});

/// True when |theta - k * unit| <= tol for some integer k (mod 2 pi handled by k).
bool is_multiple_of(double theta, double unit, double tol = 1e-12);

/// Parses "pi/4", "3pi/4", "-pi/2", "2*pi", "pi", or a decimal literal.
double parse_angle(std::string_view text);

/// Inverse of parse_angle: "k pi/4"-style literal for multiples of pi/4,
/// otherwise a round-trippable decimal.
std::string format_angle(double theta);

/// Line-oriented text format:
///   n=<int> input=<bits|singlets:i-j,...> [base=<bits>] [family=pi/4]
///   X i j theta | S i | SDG i | POST i b | MEAS i
/// Blank lines and text after '#' are ignored.
Circuit parse_circuit(std::string_view text);
Circuit load_circuit(const std::string& path);
std::string format_circuit(const Circuit& c);

}  // namespace xqp
