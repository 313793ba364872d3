#include "gateimpact/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gateimpact {

std::string_view to_string(GateKind kind) {
    switch (kind) {
        case GateKind::RZ: return "rz";
        case GateKind::SX: return "sx";
        case GateKind::X: return "x";
        case GateKind::CX: return "cx";
        case GateKind::Barrier: return "barrier";
        case GateKind::Measure: return "measure";
    }
    return "?";
}

std::string_view to_string(Origin origin) {
    switch (origin) {
        case Origin::Original: return "original";
        case Origin::InsertedReverse: return "inserted_reverse";
        case Origin::InsertedForward: return "inserted_forward";
        case Origin::MitigationBarrier: return "mitigation_barrier";
    }
    return "?";
}

bool is_gate(GateKind kind) {
    return kind != GateKind::Barrier && kind != GateKind::Measure;
}

GateOp GateOp::rz(Qubit q, double theta) {
    GateOp op;
    op.kind = GateKind::RZ;
    op.angle = theta;
    op.qubits = {q};
    return op;
}

GateOp GateOp::sx(Qubit q, bool adjoint) {
    GateOp op;
    op.kind = GateKind::SX;
    op.qubits = {q};
    op.adjoint = adjoint;
    return op;
}

GateOp GateOp::x(Qubit q) {
    GateOp op;
    op.kind = GateKind::X;
    op.qubits = {q};
    return op;
}

GateOp GateOp::cx(Qubit control, Qubit target) {
    GateOp op;
    op.kind = GateKind::CX;
    op.qubits = {control, target};
    return op;
}

GateOp GateOp::barrier(std::vector<Qubit> qubits) {
    GateOp op;
    op.kind = GateKind::Barrier;
    op.qubits = std::move(qubits);
    return op;
}

GateOp GateOp::measure(Qubit q, int clbit) {
    GateOp op;
    op.kind = GateKind::Measure;
    op.qubits = {q};
    op.clbit = clbit;
    return op;
}

GateOp GateOp::tagged(Origin o) const {
    GateOp copy = *this;
    copy.origin = o;
    return copy;
}

bool GateOp::same_instruction(const GateOp& other, double angle_tol) const {
    return kind == other.kind && qubits == other.qubits && clbit == other.clbit &&
           adjoint == other.adjoint && std::abs(angle - other.angle) <= angle_tol;
}

Circuit& Circuit::measure_all() {
    num_clbits = std::max(num_clbits, num_qubits);
    for (Qubit q = 0; q < num_qubits; ++q) ops.push_back(GateOp::measure(q, q));
    return *this;
}

std::vector<Qubit> Circuit::all_qubits() const {
    std::vector<Qubit> qs(static_cast<std::size_t>(num_qubits));
    std::iota(qs.begin(), qs.end(), 0);
    return qs;
}

namespace {

std::size_t expected_arity(GateKind kind) {
    switch (kind) {
        case GateKind::CX: return 2;
        case GateKind::Barrier: return 0;  // one or more
        default: return 1;
    }
}

}  // namespace

std::vector<Violation> validate(const Circuit& circuit) {
    std::vector<Violation> out;
    auto flag = [&](std::size_t i, std::string msg) { out.push_back({i, std::move(msg)}); };

    if (circuit.num_qubits < 1) flag(0, "circuit must have at least one qubit");
    if (circuit.num_clbits < 0) flag(0, "negative classical register size");

    const auto n = static_cast<std::size_t>(std::max(circuit.num_qubits, 0));
    std::vector<bool> measured(n, false);
    std::vector<bool> clbit_used(static_cast<std::size_t>(std::max(circuit.num_clbits, 0)), false);

    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
        const GateOp& op = circuit.ops[i];
        const std::size_t arity = expected_arity(op.kind);
        if (arity == 0 ? op.qubits.empty() : op.qubits.size() != arity) {
            flag(i, "wrong number of qubits for " + std::string(to_string(op.kind)));
        }
        bool in_range = true;
        for (Qubit q : op.qubits) {
            if (q < 0 || q >= circuit.num_qubits) {
                flag(i, "qubit index out of range");
                in_range = false;
                break;
            }
        }
        auto sorted = op.qubits;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            flag(i, "repeated qubit");
        }
        if (op.kind != GateKind::RZ && op.angle != 0.0) flag(i, "angle on a non-RZ op");
        if (op.kind == GateKind::RZ && !std::isfinite(op.angle)) flag(i, "non-finite RZ angle");
        if (op.adjoint && (op.kind == GateKind::Barrier || op.kind == GateKind::Measure)) {
            flag(i, "adjoint flag on " + std::string(to_string(op.kind)));
        }

        if (op.kind == GateKind::Measure) {
            if (op.clbit < 0 || op.clbit >= circuit.num_clbits) {
                flag(i, "classical bit index out of range");
            } else if (clbit_used[static_cast<std::size_t>(op.clbit)]) {
                flag(i, "classical bit written twice");
            } else {
                clbit_used[static_cast<std::size_t>(op.clbit)] = true;
            }
            if (in_range && op.qubits.size() == 1) {
                auto q = static_cast<std::size_t>(op.qubits[0]);
                if (measured[q]) flag(i, "qubit measured twice");
                measured[q] = true;
            }
        } else {
            if (op.clbit != -1) flag(i, "classical bit on a non-measure op");
            if (in_range) {
                for (Qubit q : op.qubits) {
                    if (measured[static_cast<std::size_t>(q)]) {
                        flag(i, "op after measurement on the same qubit");
                        break;
                    }
                }
            }
        }
    }
    return out;
}

void require_valid(const Circuit& circuit) {
    auto v = validate(circuit);
    if (!v.empty()) {
        throw CircuitError("invalid circuit: " + v.front().message + " at op " +
                           std::to_string(v.front().op_index));
    }
}

GateOp adjoint_of(const GateOp& op) {
    GateOp out = op;
    switch (op.kind) {
        case GateKind::RZ:
            out.angle = -op.angle;
            out.adjoint = false;
            break;
        case GateKind::SX:
            out.adjoint = !op.adjoint;
            break;
        case GateKind::X:
        case GateKind::CX:
            break;
        case GateKind::Barrier:
        case GateKind::Measure:
            throw CircuitError("no adjoint for " + std::string(to_string(op.kind)));
    }
    return out;
}

}  // namespace gateimpact
