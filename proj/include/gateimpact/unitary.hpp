#pragma once

#include <array>
#include <complex>
#include <span>

#include <Eigen/Dense>

#include "gateimpact/circuit.hpp"

namespace gateimpact {

using Complex = std::complex<double>;

/// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Mat2 = std::array<Complex, 4>;

/// Matrix of a one-qubit gate op (RZ/SX/X), honouring the adjoint flag.
/// Conventions: X = [[0,1],[1,0]], SX = 1/2 [[1+i,1-i],[1-i,1+i]],
/// RZ(t) = diag(e^{-it/2}, e^{+it/2}).
Mat2 gate_matrix(const GateOp& op);

// State-vector kernels. Qubit q is bit q of the basis index (little-endian).
void apply_1q(std::span<Complex> amps, Qubit q, const Mat2& m);
void apply_cx(std::span<Complex> amps, Qubit control, Qubit target);
void apply_op(std::span<Complex> amps, const GateOp& op);

inline constexpr int kMaxUnitaryQubits = 10;

/// Dense unitary of the circuit (barriers are identity). Throws CircuitError
/// for more than kMaxUnitaryQubits qubits or when a Measure is present.
Eigen::MatrixXcd unitary_of(const Circuit& circuit);

/// Copy of the circuit with Measure ops dropped.
Circuit strip_measurements(const Circuit& circuit);

/// Whether A == c*B for some |c| = 1 within `tol` in max-norm. The phase c is
/// taken from B's largest-magnitude entry. Throws on dimension mismatch.
bool equivalent_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double tol);

}  // namespace gateimpact
