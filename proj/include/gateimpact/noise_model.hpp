#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gateimpact/circuit.hpp"
#include "gateimpact/schedule.hpp"

namespace gateimpact {

/// Noise channels applied by the trajectory simulator:
///  - depolarizing error after every SX/X (p1) and CX (p2), inflated by
///    crosstalk_factor when a coupled neighbour gate runs in the same layer;
///  - amplitude damping (t1) and pure dephasing (t2) on idle time;
///  - classical bit flip at readout.
/// RZ is a virtual frame change: no error, no duration.
///
/// Per-qubit quantities hold either one value (applied to every qubit) or one
/// value per qubit.
struct NoiseModel {
    static constexpr double kNever = std::numeric_limits<double>::infinity();

    double p1 = 0.0;
    double p2 = 0.0;
    std::vector<double> readout_flip{0.0};
    std::vector<double> t1_ns{kNever};
    std::vector<double> t2_ns{kNever};
    GateDurations durations{};
    double crosstalk_factor = 1.0;
    /// Undirected coupled pairs; nullopt means a line 0-1-2-...
    std::optional<std::vector<std::pair<Qubit, Qubit>>> coupling;

    /// No noise of any kind.
    static NoiseModel ideal();
    /// p1 = 1e-3, p2 = 1e-2, readout 0.02, t1 = 100 us, t2 = 80 us,
    /// SX/X 35 ns, CX 300 ns, measure 1000 ns, crosstalk x2, line coupling.
    static NoiseModel defaults();

    double readout(Qubit q) const;
    double t1(Qubit q) const;
    double t2(Qubit q) const;
    bool coupled(Qubit a, Qubit b) const;

    /// Invariant violations for a register of `num_qubits`; empty when usable.
    std::vector<std::string> problems(int num_qubits) const;
    void require_valid(int num_qubits) const;

    friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

class NoiseModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

void to_json(nlohmann::json& j, const NoiseModel& model);
void from_json(const nlohmann::json& j, NoiseModel& model);

/// Reads a noise JSON file. Missing fields take their ideal (noise-free) value.
NoiseModel load_noise_model(const std::string& path);

}  // namespace gateimpact
