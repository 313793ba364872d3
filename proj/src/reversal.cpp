#include "gateimpact/reversal.hpp"

#include <algorithm>

namespace gateimpact {

std::string_view to_string(SkipReason reason) {
    switch (reason) {
        case SkipReason::RzVirtual: return "rz_virtual";
        case SkipReason::Barrier: return "barrier";
        case SkipReason::Measure: return "measure";
    }
    return "?";
}

std::vector<std::size_t> eligible_gate_indices(const Circuit& circuit, bool include_rz) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
        const GateKind k = circuit.ops[i].kind;
        if (!is_gate(k)) continue;
        if (k == GateKind::RZ && !include_rz) continue;
        out.push_back(i);
    }
    return out;
}

namespace {

void check_amplification(int r) {
    if (r < 1) throw CircuitError("amplification must be at least 1, got " + std::to_string(r));
}

void check_reversible(const Circuit& circuit, std::size_t index) {
    if (index >= circuit.ops.size()) {
        throw CircuitError("op index " + std::to_string(index) + " out of range");
    }
    const GateOp& op = circuit.ops[index];
    if (!is_gate(op.kind)) {
        throw CircuitError("op " + std::to_string(index) + " (" + std::string(to_string(op.kind)) +
                           ") is not eligible for reversal");
    }
}

GateOp full_barrier(const Circuit& circuit) {
    return GateOp::barrier(circuit.all_qubits()).tagged(Origin::InsertedReverse);
}

}  // namespace

Circuit insert_reversal(const Circuit& circuit, std::size_t gate_index, int r) {
    return insert_group_reversal(circuit, {gate_index}, r);
}

ReversalSuite generate_suite(const Circuit& circuit, int r, bool include_rz) {
    require_valid(circuit);
    check_amplification(r);
    ReversalSuite suite;
    suite.original = circuit;
    suite.amplification = r;
    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
        switch (circuit.ops[i].kind) {
            case GateKind::Barrier: suite.skipped.push_back({i, SkipReason::Barrier}); break;
            case GateKind::Measure: suite.skipped.push_back({i, SkipReason::Measure}); break;
            case GateKind::RZ:
                if (!include_rz) suite.skipped.push_back({i, SkipReason::RzVirtual});
                break;
            default: break;
        }
    }
    for (std::size_t i : eligible_gate_indices(circuit, include_rz)) {
        suite.variants.push_back({i, insert_reversal(circuit, i, r)});
    }
    return suite;
}

Circuit insert_group_reversal(const Circuit& circuit, std::vector<std::size_t> indices, int r) {
    require_valid(circuit);
    check_amplification(r);
    if (indices.empty()) throw CircuitError("empty reversal group");
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
        throw CircuitError("duplicate op index in reversal group");
    }
    for (std::size_t i : indices) check_reversible(circuit, i);

    std::vector<bool> member_qubit(static_cast<std::size_t>(circuit.num_qubits), false);
    for (std::size_t i : indices) {
        for (Qubit q : circuit.ops[i].qubits) member_qubit[static_cast<std::size_t>(q)] = true;
    }
    for (std::size_t i = indices.front(); i <= indices.back(); ++i) {
        if (std::binary_search(indices.begin(), indices.end(), i)) continue;
        const auto& qs = circuit.ops[i].qubits;
        if (std::any_of(qs.begin(), qs.end(), [&](Qubit q) { return member_qubit[static_cast<std::size_t>(q)]; })) {
            throw CircuitError("reversal group is not contiguous: op " + std::to_string(i) +
                               " interleaves with its members");
        }
    }

    Circuit out(circuit.num_qubits, circuit.num_clbits);
    out.ops.reserve(circuit.ops.size() + 2 * static_cast<std::size_t>(r) * indices.size() + 2);
    const std::size_t last = indices.back();
    out.ops.insert(out.ops.end(), circuit.ops.begin(), circuit.ops.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    out.ops.push_back(full_barrier(circuit));
    for (int rep = 0; rep < r; ++rep) {
        for (auto it = indices.rbegin(); it != indices.rend(); ++it) {
            out.ops.push_back(adjoint_of(circuit.ops[*it]).tagged(Origin::InsertedReverse));
        }
        for (std::size_t i : indices) out.ops.push_back(circuit.ops[i].tagged(Origin::InsertedForward));
    }
    out.ops.push_back(full_barrier(circuit));
    out.ops.insert(out.ops.end(), circuit.ops.begin() + static_cast<std::ptrdiff_t>(last) + 1, circuit.ops.end());
    return out;
}

}  // namespace gateimpact
