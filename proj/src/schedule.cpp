#include "gateimpact/schedule.hpp"

#include <algorithm>

namespace gateimpact {

double GateDurations::of(GateKind kind) const {
    switch (kind) {
        case GateKind::SX: return sx_ns;
        case GateKind::X: return x_ns;
        case GateKind::CX: return cx_ns;
        case GateKind::Measure: return measure_ns;
        case GateKind::RZ:
        case GateKind::Barrier: return 0.0;
    }
    return 0.0;
}

std::vector<std::size_t> LayerSchedule::ops_in_layer(int layer) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < layer_of.size(); ++i) {
        if (layer_of[i] == layer) out.push_back(i);
    }
    return out;
}

LayerSchedule compute_layers(const Circuit& circuit, const GateDurations* durations) {
    require_valid(circuit);

    LayerSchedule s;
    s.layer_of.assign(circuit.ops.size(), 0);
    // next free layer per qubit
    std::vector<int> frontier(static_cast<std::size_t>(circuit.num_qubits), 0);
    std::vector<std::size_t> measures;

    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
        const GateOp& op = circuit.ops[i];
        if (op.kind == GateKind::Measure) {
            measures.push_back(i);
            continue;
        }
        int layer = 0;
        for (Qubit q : op.qubits) layer = std::max(layer, frontier[static_cast<std::size_t>(q)]);
        s.layer_of[i] = layer;
        for (Qubit q : op.qubits) frontier[static_cast<std::size_t>(q)] = layer + 1;
        s.num_layers = std::max(s.num_layers, layer + 1);
    }
    for (std::size_t i : measures) s.layer_of[i] = s.num_layers;

    s.layer_duration.assign(static_cast<std::size_t>(s.num_layers), 0.0);
    if (durations != nullptr) {
        for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
            const GateOp& op = circuit.ops[i];
            if (op.kind == GateKind::Measure) continue;
            auto& d = s.layer_duration[static_cast<std::size_t>(s.layer_of[i])];
            d = std::max(d, durations->of(op.kind));
        }
    }
    return s;
}

}  // namespace gateimpact
