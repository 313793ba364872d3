#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gateimpact {

using Qubit = int;

/// Native instruction set: the {RZ, SX, X, CX} hardware basis plus the two
/// non-unitary instructions a pre-mapped circuit may carry.
enum class GateKind : std::uint8_t { RZ, SX, X, CX, Barrier, Measure };

/// Where an op came from. Transforms tag what they insert so that reports and
/// the simulator can tell inserted pairs apart from the program itself.
enum class Origin : std::uint8_t { Original, InsertedReverse, InsertedForward, MitigationBarrier };

std::string_view to_string(GateKind kind);
std::string_view to_string(Origin origin);

/// True for RZ/SX/X/CX.
bool is_gate(GateKind kind);

/// Thrown when an operation's precondition on circuit structure is violated.
class CircuitError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct GateOp {
    GateKind kind = GateKind::X;
    double angle = 0.0;  // radians, RZ only
    std::vector<Qubit> qubits;
    int clbit = -1;  // Measure only
    bool adjoint = false;
    Origin origin = Origin::Original;

    static GateOp rz(Qubit q, double theta);
    static GateOp sx(Qubit q, bool adjoint = false);
    static GateOp x(Qubit q);
    static GateOp cx(Qubit control, Qubit target);
    static GateOp barrier(std::vector<Qubit> qubits);
    static GateOp measure(Qubit q, int clbit);

    GateOp tagged(Origin o) const;

    /// Structural equality ignoring the origin tag.
    bool same_instruction(const GateOp& other, double angle_tol = 0.0) const;

    friend bool operator==(const GateOp&, const GateOp&) = default;
};

struct Circuit {
    int num_qubits = 1;
    int num_clbits = 0;
    std::vector<GateOp> ops;

    Circuit() = default;
    explicit Circuit(int qubits, int clbits = 0) : num_qubits(qubits), num_clbits(clbits) {}

    Circuit& add(GateOp op) {
        ops.push_back(std::move(op));
        return *this;
    }

    /// Appends measure q[i] -> c[i] on every qubit, growing the classical
    /// register to num_qubits if needed.
    Circuit& measure_all();

    std::vector<Qubit> all_qubits() const;

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

struct Violation {
    std::size_t op_index = 0;
    std::string message;
};

/// Every structural problem in the circuit; empty means well-formed.
std::vector<Violation> validate(const Circuit& circuit);

/// Throws CircuitError carrying the first violation, if any.
void require_valid(const Circuit& circuit);

/// The op whose unitary is the Hermitian adjoint of `op`'s.
/// RZ negates its angle, X and CX are self-inverse, SX toggles the adjoint flag.
GateOp adjoint_of(const GateOp& op);

}  // namespace gateimpact
