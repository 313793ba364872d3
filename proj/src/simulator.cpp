#include "gateimpact/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <thread>

#include "gateimpact/schedule.hpp"
#include "gateimpact/unitary.hpp"

namespace gateimpact {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) { return seed ^ mix64(index); }

namespace {

struct Readout {
    Qubit qubit;
    int clbit;
    double flip;
};

struct MeasurementMap {
    int num_clbits = 0;
    std::vector<Readout> readouts;
};

MeasurementMap measurement_map(const Circuit& circuit, const NoiseModel* model) {
    MeasurementMap m;
    for (const auto& op : circuit.ops) {
        if (op.kind == GateKind::Measure) {
            m.readouts.push_back({op.qubits[0], op.clbit, model ? model->readout(op.qubits[0]) : 0.0});
        }
    }
    if (m.readouts.empty()) {
        m.num_clbits = circuit.num_qubits;
        for (Qubit q = 0; q < circuit.num_qubits; ++q) {
            m.readouts.push_back({q, q, model ? model->readout(q) : 0.0});
        }
    } else {
        m.num_clbits = circuit.num_clbits;
    }
    if (m.num_clbits > 64) throw SimulationError("classical register wider than 64 bits");
    return m;
}

std::uint64_t to_clbits(std::uint64_t basis, const MeasurementMap& m) {
    std::uint64_t out = 0;
    for (const auto& r : m.readouts) {
        if ((basis >> r.qubit) & 1u) out |= std::uint64_t{1} << r.clbit;
    }
    return out;
}

void check_size(const Circuit& circuit) {
    if (circuit.num_qubits > kMaxSimQubits) {
        throw SimulationError("simulation supports at most " + std::to_string(kMaxSimQubits) + " qubits");
    }
}

// ---- compiled noisy program ------------------------------------------------

struct Step {
    GateOp op;
    Mat2 matrix{};
    double error = 0.0;
};

struct Decay {
    Qubit qubit;
    double gamma;    // amplitude damping probability
    double flip;     // phase-flip probability
};

struct Layer {
    std::vector<Step> steps;
    std::vector<Decay> decays;
};

struct Program {
    int num_qubits = 0;
    std::vector<Layer> layers;
    MeasurementMap measurement;
};

double base_error(const GateOp& op, const NoiseModel& model) {
    switch (op.kind) {
        case GateKind::SX:
        case GateKind::X: return model.p1;
        case GateKind::CX: return model.p2;
        default: return 0.0;
    }
}

bool physical(GateKind k) { return k == GateKind::SX || k == GateKind::X || k == GateKind::CX; }

std::vector<double> gate_errors(const Circuit& circuit, const LayerSchedule& schedule, const NoiseModel& model) {
    std::vector<double> err(circuit.ops.size(), 0.0);
    std::vector<std::vector<std::size_t>> by_layer(static_cast<std::size_t>(schedule.num_layers));
    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
        if (physical(circuit.ops[i].kind)) by_layer[static_cast<std::size_t>(schedule.layer_of[i])].push_back(i);
    }
    for (const auto& members : by_layer) {
        for (std::size_t i : members) {
            bool crowded = false;
            for (std::size_t j : members) {
                if (i == j) continue;
                for (Qubit a : circuit.ops[i].qubits) {
                    for (Qubit b : circuit.ops[j].qubits) crowded = crowded || model.coupled(a, b);
                }
            }
            const double p = base_error(circuit.ops[i], model);
            err[i] = crowded ? std::min(1.0, p * model.crosstalk_factor) : p;
        }
    }
    return err;
}

Program compile(const Circuit& circuit, const NoiseModel& model) {
    const LayerSchedule schedule = compute_layers(circuit, &model.durations);
    const std::vector<double> errors = gate_errors(circuit, schedule, model);

    Program prog;
    prog.num_qubits = circuit.num_qubits;
    prog.measurement = measurement_map(circuit, &model);
    prog.layers.resize(static_cast<std::size_t>(schedule.num_layers));

    const auto n = static_cast<std::size_t>(circuit.num_qubits);
    std::vector<bool> active(n, false);
    for (const auto& op : circuit.ops) {
        if (is_gate(op.kind)) {
            for (Qubit q : op.qubits) active[static_cast<std::size_t>(q)] = true;
        }
    }
    std::vector<std::vector<double>> busy(prog.layers.size(), std::vector<double>(n, 0.0));

    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
        const GateOp& op = circuit.ops[i];
        if (!is_gate(op.kind)) continue;
        const auto layer = static_cast<std::size_t>(schedule.layer_of[i]);
        Step step;
        step.op = op;
        if (op.kind != GateKind::CX) step.matrix = gate_matrix(op);
        step.error = errors[i];
        prog.layers[layer].steps.push_back(std::move(step));
        for (Qubit q : op.qubits) busy[layer][static_cast<std::size_t>(q)] = model.durations.of(op.kind);
    }

    for (std::size_t l = 0; l < prog.layers.size(); ++l) {
        const double d = schedule.layer_duration[l];
        if (d <= 0.0) continue;
        for (Qubit q = 0; q < circuit.num_qubits; ++q) {
            if (!active[static_cast<std::size_t>(q)]) continue;
            const double idle = d - busy[l][static_cast<std::size_t>(q)];
            if (idle <= 0.0) continue;
            const double t1 = model.t1(q), t2 = model.t2(q);
            const double gamma = std::isinf(t1) ? 0.0 : 1.0 - std::exp(-idle / t1);
            const double dephase_rate = (std::isinf(t2) ? 0.0 : 1.0 / t2) - (std::isinf(t1) ? 0.0 : 0.5 / t1);
            const double flip = dephase_rate > 0.0 ? 0.5 * (1.0 - std::exp(-idle * dephase_rate)) : 0.0;
            if (gamma > 0.0 || flip > 0.0) prog.layers[l].decays.push_back({q, gamma, flip});
        }
    }
    return prog;
}

// ---- trajectory kernels ----------------------------------------------------

class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : gen_(seed) {}
    double operator()() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 gen_;
};

const Mat2 kPauliX{0.0, 1.0, 1.0, 0.0};
const Mat2 kPauliY{0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0};
const Mat2 kPauliZ{1.0, 0.0, 0.0, -1.0};

void apply_pauli(std::span<Complex> amps, Qubit q, int which) {
    switch (which) {
        case 1: apply_1q(amps, q, kPauliX); break;
        case 2: apply_1q(amps, q, kPauliY); break;
        case 3: apply_1q(amps, q, kPauliZ); break;
        default: break;
    }
}

void depolarize(std::span<Complex> amps, const GateOp& op, Uniform& rng) {
    if (op.qubits.size() == 1) {
        // X, Y or Z with equal weight
        const int which = 1 + std::min(2, static_cast<int>(rng() * 3.0));
        apply_pauli(amps, op.qubits[0], which);
    } else {
        // one of the 15 non-identity two-qubit Paulis
        const int idx = 1 + std::min(14, static_cast<int>(rng() * 15.0));
        apply_pauli(amps, op.qubits[0], idx % 4);
        apply_pauli(amps, op.qubits[1], idx / 4);
    }
}

void amplitude_damp(std::span<Complex> amps, Qubit q, double gamma, Uniform& rng) {
    const std::size_t bit = std::size_t{1} << q;
    double excited = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & bit) excited += std::norm(amps[i]);
    }
    if (rng() < gamma * excited) {
        const double scale = 1.0 / std::sqrt(excited);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if (i & bit) {
                amps[i ^ bit] = amps[i] * scale;
                amps[i] = 0.0;
            }
        }
    } else {
        const double keep = std::sqrt(1.0 - gamma);
        const double scale = 1.0 / std::sqrt(1.0 - gamma * excited);
        for (std::size_t i = 0; i < amps.size(); ++i) amps[i] *= (i & bit) ? keep * scale : scale;
    }
}

std::uint64_t sample_basis(std::span<const Complex> amps, double u) {
    double total = 0.0;
    for (const auto& a : amps) total += std::norm(a);
    double target = u * total;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        target -= std::norm(amps[i]);
        if (target < 0.0) return i;
    }
    // rounding fallthrough: last nonzero amplitude
    for (std::size_t i = amps.size(); i-- > 0;) {
        if (std::norm(amps[i]) > 0.0) return i;
    }
    return 0;
}

void run_block(const Program& prog, std::uint64_t shots, std::uint64_t seed, std::map<std::uint64_t, std::uint64_t>& counts) {
    Uniform rng(seed);
    std::vector<Complex> amps(std::size_t{1} << prog.num_qubits);
    for (std::uint64_t s = 0; s < shots; ++s) {
        std::fill(amps.begin(), amps.end(), Complex{});
        amps[0] = 1.0;
        for (const Layer& layer : prog.layers) {
            for (const Step& step : layer.steps) {
                if (step.op.kind == GateKind::CX) apply_cx(amps, step.op.qubits[0], step.op.qubits[1]);
                else apply_1q(amps, step.op.qubits[0], step.matrix);
                if (step.error > 0.0 && rng() < step.error) depolarize(amps, step.op, rng);
            }
            for (const Decay& d : layer.decays) {
                if (d.gamma > 0.0) amplitude_damp(amps, d.qubit, d.gamma, rng);
                if (d.flip > 0.0 && rng() < d.flip) apply_1q(amps, d.qubit, kPauliZ);
            }
        }
        const std::uint64_t basis = sample_basis(amps, rng());
        std::uint64_t bits = 0;
        for (const auto& r : prog.measurement.readouts) {
            bool v = (basis >> r.qubit) & 1u;
            if (r.flip > 0.0 && rng() < r.flip) v = !v;
            if (v) bits |= std::uint64_t{1} << r.clbit;
        }
        ++counts[bits];
    }
}

template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
}

}  // namespace

Distribution ideal_probabilities(const Circuit& circuit) {
    check_size(circuit);
    require_valid(circuit);
    const MeasurementMap m = measurement_map(circuit, nullptr);
    std::vector<Complex> amps(std::size_t{1} << circuit.num_qubits);
    amps[0] = 1.0;
    for (const auto& op : circuit.ops) {
        if (op.kind != GateKind::Measure) apply_op(amps, op);
    }
    std::map<std::uint64_t, double> acc;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        if (p > 0.0) acc[to_clbits(i, m)] += p;
    }
    Distribution d;
    for (const auto& [bits, p] : acc) {
        if (p > 1e-15) d.probs[bitstring(bits, m.num_clbits)] = p;
    }
    return d;
}

Distribution run_noisy(const Circuit& circuit, const NoiseModel& model, std::uint64_t shots, std::uint64_t seed) {
    check_size(circuit);
    require_valid(circuit);
    model.require_valid(circuit.num_qubits);
    if (shots == 0) throw SimulationError("shots must be positive");

    const Program prog = compile(circuit, model);
    const std::uint64_t blocks = (shots + kShotsPerBlock - 1) / kShotsPerBlock;
    std::vector<std::map<std::uint64_t, std::uint64_t>> block_counts(blocks);
    parallel_for(blocks, [&](std::size_t b) {
        const std::uint64_t n = std::min(kShotsPerBlock, shots - b * kShotsPerBlock);
        run_block(prog, n, derive_seed(seed, b), block_counts[b]);
    });

    std::map<std::uint64_t, std::uint64_t> counts;
    for (const auto& bc : block_counts) {
        for (const auto& [bits, c] : bc) counts[bits] += c;
    }
    Distribution d;
    d.shots = shots;
    for (const auto& [bits, c] : counts) {
        d.probs[bitstring(bits, prog.measurement.num_clbits)] = static_cast<double>(c) / static_cast<double>(shots);
    }
    return d;
}

std::vector<double> effective_gate_errors(const Circuit& circuit, const NoiseModel& model) {
    model.require_valid(circuit.num_qubits);
    return gate_errors(circuit, compute_layers(circuit, &model.durations), model);
}

SuiteResult execute_suite(const ReversalSuite& suite, const NoiseModel& model, std::uint64_t shots, std::uint64_t seed) {
    SuiteResult result;
    result.original = run_noisy(suite.original, model, shots, seed);
    result.variants.reserve(suite.variants.size());
    for (const auto& v : suite.variants) {
        result.variants.push_back({v.gate_index, run_noisy(v.circuit, model, shots, derive_seed(seed, v.gate_index))});
    }
    return result;
}

}  // namespace gateimpact
