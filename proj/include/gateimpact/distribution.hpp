#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

namespace gateimpact {

/// Outcome probabilities keyed by classical bitstring. The rightmost
/// character is classical bit 0 (little-endian, as printed by most toolchains).
struct Distribution {
    std::map<std::string, double> probs;
    std::uint64_t shots = 0;  // 0 = exact

    double prob(const std::string& key) const;
    /// Key length; 0 for an empty distribution.
    std::size_t num_bits() const;
    double total() const;

    friend bool operator==(const Distribution&, const Distribution&) = default;
};

/// Half the L1 distance over the union of keys. Throws std::invalid_argument
/// when key lengths disagree.
double tvd(const Distribution& p, const Distribution& q);

/// Shot-noise tolerance for a TVD between sampled distributions:
/// 2 * sqrt(K / (2 * shots)), K = number of distinct outcomes observed.
double shot_noise_bound(std::uint64_t shots, std::size_t distinct_outcomes);

/// Same bound with K taken from the union of both supports.
double shot_noise_bound(const Distribution& p, const Distribution& q);

std::string bitstring(std::uint64_t value, int width);

void to_json(nlohmann::json& j, const Distribution& d);

}  // namespace gateimpact
