#pragma once

#include <string>
#include <utility>
#include <vector>

#include "xqp/circuit.hpp"

namespace xqp {

/// Parameters of a (possibly segmented) phase gadget G(theta) = exp(i theta Z).
struct GadgetPlan {
    int target = 0;
    double theta = 0;
    int segments = 1;
    /// (anc0, anc1) per segment, or a single pair when reuse_ancillae is set.
    /// anc0 must hold |0> and anc1 must hold |1> when the gadget starts.
    std::vector<std::pair<int, int>> ancillae;
    bool reuse_ancillae = false;
};

/// Per segment: X(target, anc0, +theta/N), POST anc0=0, X(target, anc1, -theta/N),
/// POST anc1=1. Throws DegenerateAngle when cos(theta/N) vanishes.
std::vector<GateEvent> emit_gadget(const GadgetPlan& plan);

/// cos^{2N}(theta/N).
double segmented_success_probability(double theta, int segments);

/// How S and S^dagger are realized by the builders below.
enum class SMode {
    Gadget,     ///< postselected phase gadget (pure exchange circuit)
    Primitive,  ///< SGate / SDagger events
};

/// Incrementally assembles a circuit on a fixed data register, appending
/// gadget ancilla pairs after it as they are needed.
class CircuitBuilder {
public:
    CircuitBuilder(const BasisState& data_input, SMode mode = SMode::Gadget, bool reuse_ancillae = false);

    int data_qubits() const { return data_qubits_; }
    int qubits() const { return static_cast<int>(bits_.size()); }
    SMode mode() const { return mode_; }

    void exchange(int i, int j, double theta);
    /// S (or S^dagger) on qubit i, realized according to the mode.
    void s(int i, bool dagger = false);
    /// exp(i theta Z) on qubit i via a postselected gadget with N segments.
    void gadget(int target, double theta, int segments = 1);
    void postselect(int i, int bit);
    void measure(int i);
    void append(const std::vector<GateEvent>& events);

    /// Number of gadget invocations so far.
    int gadget_count() const { return gadget_count_; }
    /// Number of ancilla qubits allocated so far.
    int ancilla_count() const { return qubits() - data_qubits_; }
    /// Product of the analytic success probabilities of all gadgets.
    double expected_success_probability() const { return expected_p_; }

    const std::vector<GateEvent>& events() const { return events_; }
    Circuit build() const;

private:
    std::pair<int, int> allocate_pair();

    int data_qubits_;
    std::vector<int> bits_;
    std::vector<GateEvent> events_;
    SMode mode_;
    bool reuse_;
    std::pair<int, int> reusable_{-1, -1};
    int gadget_count_ = 0;
    double expected_p_ = 1.0;
};

enum class LogicalGate { X, Z, H, Hdg, S, CZ, CS };

LogicalGate parse_logical_gate(const std::string& name);

/// Logical qubit a occupies physical qubits (first, second) with |0_L> = |01>
/// and |1_L> = |10>. Appends the construction of `gate` acting on `targets`
/// (one register, or two for CZ/CS) to the builder and returns the appended
/// events.
std::vector<GateEvent> build_logical_gate(CircuitBuilder& b, LogicalGate gate,
                                          const std::vector<std::pair<int, int>>& targets);

/// Prepares |0_L>^m = ((|010> - |100>)/sqrt2)^m on triples starting at
/// `first`, assuming the register holds |010>^m there. Returns appended events.
std::vector<GateEvent> dfs3_prepare(CircuitBuilder& b, int m, int first = 0);

/// Appends S on the first qubit and U(pi/4) on the first two qubits of each
/// triple, after which the middle qubit of a triple reads 1 for |0_L> and 0
/// for |1_L>.
std::vector<GateEvent> dfs3_decode_rotation(CircuitBuilder& b, int m, int first = 0);

/// Logical bit = NOT(middle bit) for every triple. Throws InvalidArgument when
/// the length is not a multiple of 3.
std::string dfs3_measure_decode(const std::string& physical_bits);

/// Exchange-only circuit on 6 data qubits mapping |0_L 0_L> to the logical
/// Bell state (|0_L 0_L> + |1_L 1_L>)/sqrt2 of the DFS3 encoding. The angles
/// are fitted once per process with a fixed seed and cached.
struct DFS3BellSynthesis {
    std::vector<GateEvent> events;
    double infidelity = 1;
};
const DFS3BellSynthesis& dfs3_bell_synthesis();

/// Full logical Bell experiment on two DFS3 qubits: preparation gadgets, the
/// synthesized entangler, decoding gadgets, and MEAS on the two middle qubits.
Circuit dfs3_bell_circuit(SMode mode = SMode::Gadget, bool reuse_ancillae = false);

}  // namespace xqp
