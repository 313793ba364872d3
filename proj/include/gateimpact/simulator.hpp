#pragma once

#include <cstdint>
#include <vector>

#include "gateimpact/circuit.hpp"
#include "gateimpact/distribution.hpp"
#include "gateimpact/noise_model.hpp"
#include "gateimpact/reversal.hpp"

namespace gateimpact {

inline constexpr int kMaxSimQubits = 20;

/// Trajectories are drawn in fixed-size blocks, each with its own generator
/// seeded from (seed, block index), so results do not depend on threading.
inline constexpr std::uint64_t kShotsPerBlock = 1024;

/// SplitMix64 finaliser; the stable hash behind every seed derivation.
std::uint64_t mix64(std::uint64_t x);

/// seed XOR mix64(index). Used for variant circuits (index = gate index) and
/// for trajectory blocks.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Exact noiseless outcome distribution (shots = 0). Circuits without Measure
/// ops are treated as measuring every qubit into the matching classical bit.
Distribution ideal_probabilities(const Circuit& circuit);

/// Monte Carlo trajectory sampling under `model`. Deterministic in
/// (circuit, model, shots, seed).
Distribution run_noisy(const Circuit& circuit, const NoiseModel& model, std::uint64_t shots, std::uint64_t seed);

/// Depolarizing probability each op actually sees after the crosstalk
/// multiplier (0 for RZ, barriers and measurements). Indexed by op.
std::vector<double> effective_gate_errors(const Circuit& circuit, const NoiseModel& model);

struct VariantResult {
    std::size_t gate_index = 0;
    Distribution distribution;
};

struct SuiteResult {
    Distribution original;
    std::vector<VariantResult> variants;  // same order as suite.variants
};

/// Runs the original with `seed` and each variant with derive_seed(seed, gate_index).
SuiteResult execute_suite(const ReversalSuite& suite, const NoiseModel& model, std::uint64_t shots, std::uint64_t seed);

class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gateimpact
