#pragma once

#include <vector>

#include "gateimpact/circuit.hpp"

namespace gateimpact {

/// Per-kind execution times in nanoseconds. RZ is a frame change and takes no time.
struct GateDurations {
    double sx_ns = 0.0;
    double x_ns = 0.0;
    double cx_ns = 0.0;
    double measure_ns = 0.0;

    double of(GateKind kind) const;

    friend bool operator==(const GateDurations&, const GateDurations&) = default;
};

/// ASAP layering. Barriers occupy their own layer on their qubits; measurements
/// are placed in a terminal slot with layer number == num_layers and are not
/// counted in the depth.
struct LayerSchedule {
    std::vector<int> layer_of;           // indexed by op
    int num_layers = 0;
    std::vector<double> layer_duration;  // size num_layers, ns

    /// Op indices in `layer`, ascending.
    std::vector<std::size_t> ops_in_layer(int layer) const;
};

LayerSchedule compute_layers(const Circuit& circuit, const GateDurations* durations = nullptr);

}  // namespace gateimpact
