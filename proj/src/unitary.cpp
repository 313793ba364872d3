#include "gateimpact/unitary.hpp"

#include <cmath>

namespace gateimpact {

Mat2 gate_matrix(const GateOp& op) {
    using namespace std::complex_literals;
    Mat2 m{};
    switch (op.kind) {
        case GateKind::X:
            m = {0.0, 1.0, 1.0, 0.0};
            break;
        case GateKind::SX:
            m = {0.5 * (1.0 + 1i), 0.5 * (1.0 - 1i), 0.5 * (1.0 - 1i), 0.5 * (1.0 + 1i)};
            break;
        case GateKind::RZ:
            m = {std::exp(-0.5i * op.angle), 0.0, 0.0, std::exp(0.5i * op.angle)};
            break;
        default:
            throw CircuitError("no 2x2 matrix for " + std::string(to_string(op.kind)));
    }
    if (op.adjoint) {
        m = {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
    }
    return m;
}

void apply_1q(std::span<Complex> amps, Qubit q, const Mat2& m) {
    const std::size_t bit = std::size_t{1} << q;
    const std::size_t dim = amps.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        const Complex a0 = amps[i];
        const Complex a1 = amps[i | bit];
        amps[i] = m[0] * a0 + m[1] * a1;
        amps[i | bit] = m[2] * a0 + m[3] * a1;
    }
}

void apply_cx(std::span<Complex> amps, Qubit control, Qubit target) {
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cbit) && !(i & tbit)) std::swap(amps[i], amps[i | tbit]);
    }
}

void apply_op(std::span<Complex> amps, const GateOp& op) {
    switch (op.kind) {
        case GateKind::CX:
            apply_cx(amps, op.qubits[0], op.qubits[1]);
            break;
        case GateKind::Barrier:
            break;
        case GateKind::Measure:
            throw CircuitError("measurement has no unitary action");
        default:
            apply_1q(amps, op.qubits[0], gate_matrix(op));
    }
}

Eigen::MatrixXcd unitary_of(const Circuit& circuit) {
    if (circuit.num_qubits > kMaxUnitaryQubits) {
        throw CircuitError("unitary_of supports at most " + std::to_string(kMaxUnitaryQubits) + " qubits");
    }
    require_valid(circuit);
    for (const auto& op : circuit.ops) {
        if (op.kind == GateKind::Measure) throw CircuitError("unitary_of: circuit contains a measurement");
    }
    const Eigen::Index dim = Eigen::Index{1} << circuit.num_qubits;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        std::span<Complex> column(u.col(col).data(), static_cast<std::size_t>(dim));
        for (const auto& op : circuit.ops) apply_op(column, op);
    }
    return u;
}

Circuit strip_measurements(const Circuit& circuit) {
    Circuit out(circuit.num_qubits, circuit.num_clbits);
    for (const auto& op : circuit.ops) {
        if (op.kind != GateKind::Measure) out.ops.push_back(op);
    }
    return out;
}

bool equivalent_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("equivalent_up_to_phase: dimension mismatch");
    }
    if (b.size() == 0) return true;
    Eigen::Index r = 0, c = 0;
    b.cwiseAbs().maxCoeff(&r, &c);
    const Complex pivot = b(r, c);
    if (std::abs(pivot) == 0.0) return a.cwiseAbs().maxCoeff() <= tol;
    if (std::abs(a(r, c)) == 0.0) return false;
    // phase that aligns B's dominant entry with A's
    Complex phase = a(r, c) / pivot;
    phase /= std::abs(phase);
    return (a - phase * b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace gateimpact
