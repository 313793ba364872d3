#include "gateimpact/bench.hpp"

#include <cmath>
#include <numbers>

namespace gateimpact {

using std::numbers::pi;

void append_h(Circuit& c, Qubit q) {
    c.add(GateOp::rz(q, pi / 2)).add(GateOp::sx(q)).add(GateOp::rz(q, pi / 2));
}

void append_cp(Circuit& c, Qubit control, Qubit target, double theta) {
    c.add(GateOp::rz(control, theta / 2))
        .add(GateOp::rz(target, theta / 2))
        .add(GateOp::cx(control, target))
        .add(GateOp::rz(target, -theta / 2))
        .add(GateOp::cx(control, target));
}

void append_swap(Circuit& c, Qubit a, Qubit b) {
    c.add(GateOp::cx(a, b)).add(GateOp::cx(b, a)).add(GateOp::cx(a, b));
}

void append_zz(Circuit& c, Qubit a, Qubit b, double theta) {
    c.add(GateOp::cx(a, b)).add(GateOp::rz(b, theta)).add(GateOp::cx(a, b));
}

void append_rx(Circuit& c, Qubit q, double theta) {
    c.add(GateOp::rz(q, pi / 2))
        .add(GateOp::sx(q))
        .add(GateOp::rz(q, pi + theta))
        .add(GateOp::sx(q))
        .add(GateOp::rz(q, pi / 2));
}

Circuit qft_circuit(int n, const std::string& target) {
    if (n < 1) throw CircuitError("qft needs at least one qubit");
    if (target.size() != static_cast<std::size_t>(n)) {
        throw CircuitError("target bitstring length " + std::to_string(target.size()) + " != " + std::to_string(n));
    }
    std::uint64_t value = 0;
    for (char ch : target) {
        if (ch != '0' && ch != '1') throw CircuitError("target must be a bitstring");
        value = (value << 1) | static_cast<std::uint64_t>(ch - '0');
    }

    Circuit c(n);
    // Inverse-QFT image of |value>: qubit j carries relative phase
    // -2 pi value 2^j / 2^n, folded into the trailing RZ of its H.
    const double dim = std::ldexp(1.0, n);
    for (Qubit j = 0; j < n; ++j) {
        const double frac = std::fmod(static_cast<double>(value) * std::ldexp(1.0, j), dim) / dim;
        const double phase = -2.0 * pi * frac;
        c.add(GateOp::rz(j, pi / 2)).add(GateOp::sx(j)).add(GateOp::rz(j, pi / 2 + phase));
    }
    for (Qubit j = n - 1; j >= 0; --j) {
        append_h(c, j);
        for (Qubit m = j - 1; m >= 0; --m) append_cp(c, m, j, pi / std::ldexp(1.0, j - m));
    }
    for (Qubit j = 0; j < n / 2; ++j) append_swap(c, j, n - 1 - j);
    c.measure_all();
    return c;
}

Circuit ghz_circuit(int n) {
    if (n < 2) throw CircuitError("ghz needs at least two qubits");
    Circuit c(n);
    append_h(c, 0);
    for (Qubit q = 0; q + 1 < n; ++q) c.add(GateOp::cx(q, q + 1));
    c.measure_all();
    return c;
}

Circuit tfim_circuit(int n, int steps, double theta_zz, double theta_x) {
    if (n < 2) throw CircuitError("tfim needs at least two qubits");
    if (steps < 1) throw CircuitError("tfim needs at least one trotter step");
    Circuit c(n);
    for (int s = 0; s < steps; ++s) {
        for (Qubit q = 0; q + 1 < n; ++q) append_zz(c, q, q + 1, theta_zz);
        for (Qubit q = 0; q < n; ++q) append_rx(c, q, theta_x);
    }
    c.measure_all();
    return c;
}

Circuit crosstalk_circuit() {
    Circuit c(3);
    for (int rep = 0; rep < 2; ++rep) c.add(GateOp::cx(0, 1)).add(GateOp::x(2));
    c.measure_all();
    return c;
}

}  // namespace gateimpact
