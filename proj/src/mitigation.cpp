#include "gateimpact/mitigation.hpp"

#include <algorithm>
#include <numeric>

#include "gateimpact/schedule.hpp"
#include "gateimpact/simulator.hpp"

namespace gateimpact {

std::set<int> select_target_layers(const ImpactReport& report, int k) {
    if (k < 1) throw ReportError("k must be at least 1");
    if (report.records.empty()) throw ReportError("cannot select layers from an empty report");
    std::set<int> layers;
    for (std::size_t i = 0; i < report.records.size() && i < static_cast<std::size_t>(k); ++i) {
        layers.insert(report.records[i].layer);
    }
    return layers;
}

std::pair<Circuit, MitigationPlan> serialize_layers(const Circuit& circuit, const std::set<int>& layers) {
    const LayerSchedule schedule = compute_layers(circuit);
    MitigationPlan plan;
    plan.target_layers = layers;
    plan.before_depth = schedule.num_layers;
    for (int l : layers) {
        if (l < 0 || l >= schedule.num_layers) throw CircuitError("unknown layer " + std::to_string(l));
    }

    std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(schedule.num_layers) + 1);
    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
        members[static_cast<std::size_t>(schedule.layer_of[i])].push_back(i);
    }
    const bool any = std::any_of(layers.begin(), layers.end(),
                                 [&](int l) { return members[static_cast<std::size_t>(l)].size() > 1; });
    if (!any) {
        plan.after_depth = plan.before_depth;
        return {circuit, plan};
    }

    const GateOp fence = GateOp::barrier(circuit.all_qubits()).tagged(Origin::MitigationBarrier);
    Circuit out(circuit.num_qubits, circuit.num_clbits);
    // Emitting layer by layer is a valid topological order of the ASAP schedule.
    for (std::size_t l = 0; l < members.size(); ++l) {
        const auto& ops = members[l];
        const bool split = layers.count(static_cast<int>(l)) && ops.size() > 1;
        for (std::size_t k = 0; k < ops.size(); ++k) {
            out.ops.push_back(circuit.ops[ops[k]]);
            if (split) {
                out.ops.push_back(fence);
                ++plan.inserted_barriers;
            }
        }
    }
    plan.after_depth = compute_layers(out).num_layers;
    return {std::move(out), plan};
}

MitigationOutcome evaluate_mitigation(const Circuit& circuit, const Circuit& mitigated, const NoiseModel& model,
                                      std::uint64_t shots, std::uint64_t seed, const Distribution& reference) {
    MitigationOutcome m;
    m.tvd_before = tvd(reference, run_noisy(circuit, model, shots, seed));
    m.tvd_after = tvd(reference, run_noisy(mitigated, model, shots, seed));
    return m;
}

nlohmann::json plan_to_json(const MitigationPlan& plan) {
    return {{"target_layers", plan.target_layers},
            {"inserted_barriers", plan.inserted_barriers},
            {"before_depth", plan.before_depth},
            {"after_depth", plan.after_depth}};
}

}  // namespace gateimpact
