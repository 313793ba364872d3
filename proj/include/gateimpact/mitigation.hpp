#pragma once

#include <set>

#include <json.hpp>

#include "gateimpact/circuit.hpp"
#include "gateimpact/distribution.hpp"
#include "gateimpact/noise_model.hpp"
#include "gateimpact/report.hpp"

namespace gateimpact {

struct MitigationPlan {
    std::set<int> target_layers;
    int inserted_barriers = 0;
    int before_depth = 0;
    int after_depth = 0;
};

/// Layers holding the k highest-impact records.
std::set<int> select_target_layers(const ImpactReport& report, int k);

/// Runs each target layer one op at a time: full-width barriers go between
/// consecutive ops of the layer and after its last op, so nothing from a later
/// layer can slide back alongside them. Ops keep their original relative
/// order; other layers keep their contents. Layers holding a single op are
/// left alone, and if nothing needs serializing the circuit is returned as is.
std::pair<Circuit, MitigationPlan> serialize_layers(const Circuit& circuit, const std::set<int>& layers);

struct MitigationOutcome {
    double tvd_before = 0.0;
    double tvd_after = 0.0;
};

/// Noisy runs of both circuits with the same seed, each scored against `reference`.
MitigationOutcome evaluate_mitigation(const Circuit& circuit, const Circuit& mitigated, const NoiseModel& model,
                                      std::uint64_t shots, std::uint64_t seed, const Distribution& reference);

nlohmann::json plan_to_json(const MitigationPlan& plan);

}  // namespace gateimpact
