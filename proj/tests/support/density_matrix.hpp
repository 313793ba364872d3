#pragma once

// Exact density-matrix evaluation of the noise model, for small registers.
// Test-only oracle: it builds full 2^n x 2^n operators with Kronecker products
// and applies every channel as a Kraus sum, sharing nothing with the
// trajectory kernels except the layer schedule.

#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "gateimpact/circuit.hpp"
#include "gateimpact/distribution.hpp"
#include "gateimpact/noise_model.hpp"
#include "gateimpact/schedule.hpp"

namespace oracle {

using gateimpact::Circuit;
using gateimpact::GateKind;
using gateimpact::GateOp;
using gateimpact::NoiseModel;
using gateimpact::Qubit;
using Mat = Eigen::MatrixXcd;
using C = std::complex<double>;

inline Mat single(const GateOp& op) {
    const C i(0.0, 1.0);
    Mat m(2, 2);
    switch (op.kind) {
        case GateKind::X: m << 0, 1, 1, 0; break;
        case GateKind::SX: m << C(0.5, 0.5), C(0.5, -0.5), C(0.5, -0.5), C(0.5, 0.5); break;
        case GateKind::RZ: m << std::exp(-i * op.angle / 2.0), 0, 0, std::exp(i * op.angle / 2.0); break;
        default: throw std::logic_error("not a one-qubit gate");
    }
    return op.adjoint ? Mat(m.adjoint()) : m;
}

/// `m` acting on qubit q of an n-qubit register; qubit 0 is the rightmost factor.
inline Mat embed(const Mat& m, Qubit q, int n) {
    Mat out = Mat::Identity(1, 1);
    for (int k = n - 1; k >= 0; --k) {
        const Mat f = (k == q) ? m : Mat::Identity(2, 2);
        Mat next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index r = 0; r < out.rows(); ++r)
            for (Eigen::Index c = 0; c < out.cols(); ++c) next.block(r * 2, c * 2, 2, 2) = out(r, c) * f;
        out = next;
    }
    return out;
}

inline Mat cx_full(Qubit control, Qubit target, int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    Mat m = Mat::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        Eigen::Index out = ((b >> control) & 1) ? (b ^ (Eigen::Index{1} << target)) : b;
        m(out, b) = 1.0;
    }
    return m;
}

inline Mat pauli(int which) {
    Mat m(2, 2);
    const C i(0.0, 1.0);
    switch (which) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -i, i, 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

inline Mat kraus_sum(const Mat& rho, const std::vector<std::pair<double, Mat>>& weighted) {
    Mat out = Mat::Zero(rho.rows(), rho.cols());
    for (const auto& [w, k] : weighted) out += w * k * rho * k.adjoint();
    return out;
}

inline Mat depolarize(const Mat& rho, const GateOp& op, double p, int n) {
    std::vector<std::pair<double, Mat>> terms;
    const Eigen::Index dim = rho.rows();
    terms.emplace_back(1.0 - p, Mat::Identity(dim, dim));
    if (op.qubits.size() == 1) {
        for (int a = 1; a < 4; ++a) terms.emplace_back(p / 3.0, embed(pauli(a), op.qubits[0], n));
    } else {
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                if (a == 0 && b == 0) continue;
                terms.emplace_back(p / 15.0, embed(pauli(a), op.qubits[0], n) * embed(pauli(b), op.qubits[1], n));
            }
    }
    return kraus_sum(rho, terms);
}

inline Mat amplitude_damping(const Mat& rho, Qubit q, double gamma, int n) {
    Mat k0(2, 2), k1(2, 2);
    k0 << 1, 0, 0, std::sqrt(1.0 - gamma);
    k1 << 0, std::sqrt(gamma), 0, 0;
    return kraus_sum(rho, {{1.0, embed(k0, q, n)}, {1.0, embed(k1, q, n)}});
}

inline Mat phase_flip(const Mat& rho, Qubit q, double p, int n) {
    const Eigen::Index dim = rho.rows();
    return kraus_sum(rho, {{1.0 - p, Mat::Identity(dim, dim)}, {p, embed(pauli(3), q, n)}});
}

inline double duration(const NoiseModel& m, GateKind k) {
    switch (k) {
        case GateKind::SX: return m.durations.sx_ns;
        case GateKind::X: return m.durations.x_ns;
        case GateKind::CX: return m.durations.cx_ns;
        default: return 0.0;
    }
}

/// Exact outcome distribution of `circuit` under `model`.
inline gateimpact::Distribution probabilities(const Circuit& circuit, const NoiseModel& model) {
    const int n = circuit.num_qubits;
    if (n > 6) throw std::invalid_argument("density-matrix oracle is for small registers");
    const auto sched = gateimpact::compute_layers(circuit);
    const Eigen::Index dim = Eigen::Index{1} << n;
    Mat rho = Mat::Zero(dim, dim);
    rho(0, 0) = 1.0;

    std::set<Qubit> active;
    for (const auto& op : circuit.ops)
        if (gateimpact::is_gate(op.kind)) active.insert(op.qubits.begin(), op.qubits.end());

    for (int layer = 0; layer < sched.num_layers; ++layer) {
        std::vector<const GateOp*> ops;
        for (std::size_t i = 0; i < circuit.ops.size(); ++i)
            if (sched.layer_of[i] == layer && gateimpact::is_gate(circuit.ops[i].kind)) ops.push_back(&circuit.ops[i]);

        double layer_time = 0.0;
        std::map<Qubit, double> busy;
        for (const GateOp* op : ops) {
            layer_time = std::max(layer_time, duration(model, op->kind));
            for (Qubit q : op->qubits) busy[q] = duration(model, op->kind);
        }
        for (const GateOp* op : ops) {
            const Mat u = op->kind == GateKind::CX ? cx_full(op->qubits[0], op->qubits[1], n)
                                                   : embed(single(*op), op->qubits[0], n);
            rho = u * rho * u.adjoint();
            double p = op->kind == GateKind::CX ? model.p2 : (op->kind == GateKind::RZ ? 0.0 : model.p1);
            if (p > 0.0 && op->kind != GateKind::RZ) {
                bool neighbour_active = false;
                for (const GateOp* other : ops) {
                    if (other == op || other->kind == GateKind::RZ) continue;
                    for (Qubit a : op->qubits)
                        for (Qubit b : other->qubits) neighbour_active |= model.coupled(a, b);
                }
                if (neighbour_active) p = std::min(1.0, p * model.crosstalk_factor);
                rho = depolarize(rho, *op, p, n);
            }
        }
        for (Qubit q : active) {
            const double idle = layer_time - (busy.count(q) ? busy[q] : 0.0);
            if (idle <= 0.0) continue;
            const double t1 = model.t1(q), t2 = model.t2(q);
            if (!std::isinf(t1)) rho = amplitude_damping(rho, q, 1.0 - std::exp(-idle / t1), n);
            const double rate = (std::isinf(t2) ? 0.0 : 1.0 / t2) - (std::isinf(t1) ? 0.0 : 0.5 / t1);
            if (rate > 0.0) rho = phase_flip(rho, q, 0.5 * (1.0 - std::exp(-idle * rate)), n);
        }
    }

    // measurement: populations, then independent classical flips
    std::vector<std::pair<Qubit, int>> meas;
    int width = circuit.num_clbits;
    for (const auto& op : circuit.ops)
        if (op.kind == GateKind::Measure) meas.emplace_back(op.qubits[0], op.clbit);
    if (meas.empty()) {
        width = n;
        for (Qubit q = 0; q < n; ++q) meas.emplace_back(q, q);
    }
    std::map<std::uint64_t, double> dist;
    for (Eigen::Index b = 0; b < dim; ++b) {
        std::uint64_t bits = 0;
        for (auto [q, c] : meas)
            if ((b >> q) & 1) bits |= std::uint64_t{1} << c;
        dist[bits] += rho(b, b).real();
    }
    for (auto [q, c] : meas) {
        const double f = model.readout(q);
        if (f <= 0.0) continue;
        std::map<std::uint64_t, double> next;
        for (auto [bits, p] : dist) {
            next[bits] += (1.0 - f) * p;
            next[bits ^ (std::uint64_t{1} << c)] += f * p;
        }
        dist = next;
    }
    gateimpact::Distribution d;
    for (auto [bits, p] : dist)
        if (p > 1e-15) d.probs[gateimpact::bitstring(bits, width)] = p;
    return d;
}

}  // namespace oracle
