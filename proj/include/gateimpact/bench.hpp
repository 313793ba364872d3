#pragma once

#include <string>

#include "gateimpact/circuit.hpp"

namespace gateimpact {

// Basis-gate building blocks. Each appends to `c` and is unitary-checked in tests.

/// H = RZ(pi/2) SX RZ(pi/2), up to global phase.
void append_h(Circuit& c, Qubit q);
/// Controlled phase diag(1,1,1,e^{i theta}) as RZ(t/2)c RZ(t/2)t CX RZ(-t/2)t CX.
void append_cp(Circuit& c, Qubit control, Qubit target, double theta);
/// SWAP as three CX.
void append_swap(Circuit& c, Qubit a, Qubit b);
/// exp(-i theta/2 Z(x)Z) as CX RZ(theta) CX.
void append_zz(Circuit& c, Qubit a, Qubit b, double theta);
/// exp(-i theta/2 X) as RZ(pi/2) SX RZ(pi + theta) SX RZ(pi/2).
void append_rx(Circuit& c, Qubit q, double theta);

/// Prepares the state the QFT maps onto `target`, then runs the QFT (with
/// final swaps) and measures every qubit. The ideal output is `target`.
/// `target` is printed most-significant first: its last character is qubit 0.
Circuit qft_circuit(int n, const std::string& target);

/// H on qubit 0 then a CX chain, measured.
Circuit ghz_circuit(int n);

/// Trotterized transverse-field Ising evolution: per step, nearest-neighbour
/// ZZ rotations on a line, then an X rotation on every qubit. Measured.
Circuit tfim_circuit(int n, int steps, double theta_zz, double theta_x);

/// Small crosstalk stress circuit on a 3-qubit line: two layers that each run
/// CX(0,1) alongside X(2), whose qubits are coupled neighbours. Ideal output "000".
Circuit crosstalk_circuit();

}  // namespace gateimpact
