#include "gateimpact/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace gateimpact {

double Distribution::prob(const std::string& key) const {
    auto it = probs.find(key);
    return it == probs.end() ? 0.0 : it->second;
}

std::size_t Distribution::num_bits() const {
    return probs.empty() ? 0 : probs.begin()->first.size();
}

double Distribution::total() const {
    double s = 0.0;
    for (const auto& [k, v] : probs) s += v;
    return s;
}

double tvd(const Distribution& p, const Distribution& q) {
    if (!p.probs.empty() && !q.probs.empty() && p.num_bits() != q.num_bits()) {
        throw std::invalid_argument("tvd: distributions over different register widths");
    }
    double sum = 0.0;
    auto a = p.probs.begin();
    auto b = q.probs.begin();
    // merge walk over the two sorted key sets
    while (a != p.probs.end() || b != q.probs.end()) {
        if (b == q.probs.end() || (a != p.probs.end() && a->first < b->first)) {
            sum += std::abs(a->second);
            ++a;
        } else if (a == p.probs.end() || b->first < a->first) {
            sum += std::abs(b->second);
            ++b;
        } else {
            sum += std::abs(a->second - b->second);
            ++a;
            ++b;
        }
    }
    return std::clamp(0.5 * sum, 0.0, 1.0);
}

double shot_noise_bound(std::uint64_t shots, std::size_t distinct_outcomes) {
    if (shots == 0) return 0.0;
    const double k = static_cast<double>(std::max<std::size_t>(distinct_outcomes, 1));
    return 2.0 * std::sqrt(k / (2.0 * static_cast<double>(shots)));
}

double shot_noise_bound(const Distribution& p, const Distribution& q) {
    std::set<std::string> keys;
    for (const auto& [k, v] : p.probs) keys.insert(k);
    for (const auto& [k, v] : q.probs) keys.insert(k);
    const std::uint64_t shots = std::max(p.shots, q.shots);
    return shot_noise_bound(shots, keys.size());
}

std::string bitstring(std::uint64_t value, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int b = 0; b < width; ++b) {
        if ((value >> b) & 1u) s[static_cast<std::size_t>(width - 1 - b)] = '1';
    }
    return s;
}

void to_json(nlohmann::json& j, const Distribution& d) {
    j = nlohmann::json{{"shots", d.shots}, {"probs", d.probs}};
}

}  // namespace gateimpact
