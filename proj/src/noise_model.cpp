#include "gateimpact/noise_model.hpp"

#include <cmath>
#include <fstream>

namespace gateimpact {

using nlohmann::json;

NoiseModel NoiseModel::ideal() { return NoiseModel{}; }

NoiseModel NoiseModel::defaults() {
    NoiseModel m;
    m.p1 = 0.001;
    m.p2 = 0.01;
    m.readout_flip = {0.02};
    m.t1_ns = {100'000.0};
    m.t2_ns = {80'000.0};
    m.durations = {.sx_ns = 35.0, .x_ns = 35.0, .cx_ns = 300.0, .measure_ns = 1000.0};
    m.crosstalk_factor = 2.0;
    return m;
}

namespace {

double per_qubit(const std::vector<double>& values, Qubit q) {
    if (values.size() == 1) return values.front();
    return values.at(static_cast<std::size_t>(q));
}

}  // namespace

double NoiseModel::readout(Qubit q) const { return per_qubit(readout_flip, q); }
double NoiseModel::t1(Qubit q) const { return per_qubit(t1_ns, q); }
double NoiseModel::t2(Qubit q) const { return per_qubit(t2_ns, q); }

bool NoiseModel::coupled(Qubit a, Qubit b) const {
    if (!coupling) return std::abs(a - b) == 1;
    for (const auto& [x, y] : *coupling) {
        if ((x == a && y == b) || (x == b && y == a)) return true;
    }
    return false;
}

std::vector<std::string> NoiseModel::problems(int num_qubits) const {
    std::vector<std::string> out;
    auto prob_ok = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!prob_ok(p1)) out.push_back("p1 must lie in [0, 1]");
    if (!prob_ok(p2)) out.push_back("p2 must lie in [0, 1]");
    if (!(crosstalk_factor >= 1.0) || !std::isfinite(crosstalk_factor)) out.push_back("crosstalk_factor must be >= 1");
    auto sized = [&](const std::vector<double>& v, const char* name) {
        if (v.size() != 1 && v.size() != static_cast<std::size_t>(num_qubits)) {
            out.push_back(std::string(name) + " needs 1 or " + std::to_string(num_qubits) + " entries");
            return false;
        }
        return true;
    };
    if (sized(readout_flip, "readout_flip")) {
        for (double p : readout_flip) {
            if (!prob_ok(p)) out.push_back("readout_flip must lie in [0, 1]");
        }
    }
    if (sized(t1_ns, "t1_ns") && sized(t2_ns, "t2_ns")) {
        for (Qubit q = 0; q < num_qubits; ++q) {
            const double t1v = t1(q), t2v = t2(q);
            if (!(t1v > 0.0) || !(t2v > 0.0)) out.push_back("t1/t2 must be positive on qubit " + std::to_string(q));
            else if (t2v > 2.0 * t1v) out.push_back("t2 exceeds 2*t1 on qubit " + std::to_string(q));
        }
    }
    for (double d : {durations.sx_ns, durations.x_ns, durations.cx_ns, durations.measure_ns}) {
        if (!(d >= 0.0) || !std::isfinite(d)) out.push_back("gate durations must be finite and >= 0");
    }
    if (coupling) {
        for (const auto& [a, b] : *coupling) {
            if (a < 0 || b < 0 || a == b) out.push_back("bad coupling pair");
        }
    }
    return out;
}

void NoiseModel::require_valid(int num_qubits) const {
    auto p = problems(num_qubits);
    if (!p.empty()) throw NoiseModelError("invalid noise model: " + p.front());
}

namespace {

json times_to_json(const std::vector<double>& v) {
    auto one = [](double t) { return std::isinf(t) ? json(nullptr) : json(t); };
    if (v.size() == 1) return one(v.front());
    json arr = json::array();
    for (double t : v) arr.push_back(one(t));
    return arr;
}

std::vector<double> times_from_json(const json& j) {
    auto one = [](const json& x) { return x.is_null() ? NoiseModel::kNever : x.get<double>(); };
    if (j.is_array()) {
        std::vector<double> v;
        for (const auto& x : j) v.push_back(one(x));
        if (v.empty()) throw NoiseModelError("empty per-qubit array");
        return v;
    }
    return {one(j)};
}

std::vector<double> probs_from_json(const json& j) {
    if (j.is_array()) {
        auto v = j.get<std::vector<double>>();
        if (v.empty()) throw NoiseModelError("empty per-qubit array");
        return v;
    }
    return {j.get<double>()};
}

}  // namespace

void to_json(json& j, const NoiseModel& m) {
    j = json{
        {"p1", m.p1},
        {"p2", m.p2},
        {"readout_flip", m.readout_flip.size() == 1 ? json(m.readout_flip.front()) : json(m.readout_flip)},
        {"t1_ns", times_to_json(m.t1_ns)},
        {"t2_ns", times_to_json(m.t2_ns)},
        {"durations_ns",
         {{"sx", m.durations.sx_ns}, {"x", m.durations.x_ns}, {"cx", m.durations.cx_ns}, {"measure", m.durations.measure_ns}, {"rz", 0.0}}},
        {"crosstalk_factor", m.crosstalk_factor},
    };
    if (m.coupling) {
        json pairs = json::array();
        for (const auto& [a, b] : *m.coupling) pairs.push_back({a, b});
        j["coupling"] = pairs;
    } else {
        j["coupling"] = "line";
    }
}

void from_json(const json& j, NoiseModel& m) {
    if (!j.is_object()) throw NoiseModelError("noise model must be a JSON object");
    m = NoiseModel::ideal();
    for (const auto& [key, value] : j.items()) {
        if (key == "p1") m.p1 = value.get<double>();
        else if (key == "p2") m.p2 = value.get<double>();
        else if (key == "readout_flip") m.readout_flip = probs_from_json(value);
        else if (key == "t1_ns") m.t1_ns = times_from_json(value);
        else if (key == "t2_ns") m.t2_ns = times_from_json(value);
        else if (key == "crosstalk_factor") m.crosstalk_factor = value.get<double>();
        else if (key == "durations_ns") {
            for (const auto& [gate, d] : value.items()) {
                const double v = d.get<double>();
                if (gate == "sx") m.durations.sx_ns = v;
                else if (gate == "x") m.durations.x_ns = v;
                else if (gate == "cx") m.durations.cx_ns = v;
                else if (gate == "measure") m.durations.measure_ns = v;
                else if (gate == "rz") {
                    if (v != 0.0) throw NoiseModelError("rz duration must be 0");
                } else {
                    throw NoiseModelError("unknown gate in durations_ns: " + gate);
                }
            }
        } else if (key == "coupling") {
            if (value.is_string() && value.get<std::string>() == "line") {
                m.coupling.reset();
            } else {
                std::vector<std::pair<Qubit, Qubit>> pairs;
                for (const auto& p : value) {
                    if (!p.is_array() || p.size() != 2) throw NoiseModelError("coupling entries must be [i, j] pairs");
                    pairs.emplace_back(p[0].get<Qubit>(), p[1].get<Qubit>());
                }
                m.coupling = std::move(pairs);
            }
        } else {
            throw NoiseModelError("unknown noise model field: " + key);
        }
    }
}

NoiseModel load_noise_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw NoiseModelError("cannot open noise model file: " + path);
    try {
        return json::parse(in).get<NoiseModel>();
    } catch (const json::exception& e) {
        throw NoiseModelError("bad noise model file " + path + ": " + e.what());
    }
}

}  // namespace gateimpact
