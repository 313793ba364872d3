#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gateimpact/circuit.hpp"

namespace gateimpact {

struct ParseDiagnostic {
    int line = 1;    // 1-based
    int column = 1;  // 1-based
    std::string message;

    std::string to_string() const;
};

struct ParseResult {
    std::optional<Circuit> circuit;
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const { return circuit.has_value(); }
};

/// Reads the supported OpenQASM 2.0 subset:
///
///   OPENQASM 2.0;  include "qelib1.inc";  qreg q[n];  creg c[m];
///   rz(expr) q[i];  sx q[i];  sxdg q[i];  x q[i];  cx q[i],q[j];
///   barrier q[i],...;  barrier q;  measure q[i] -> c[j];  measure q -> c;
///
/// Angle expressions take numeric literals, `pi`, + - * /, unary minus and
/// parentheses. A `// @sxdg` line comment directly before the three-gate
/// sequence `rz(pi); sx; rz(pi)` on one qubit folds it back into SX-adjoint.
/// Anything else yields a positioned diagnostic; the parser never throws.
ParseResult parse_qasm(std::string_view text);

struct EmitOptions {
    /// Emit SX-adjoint as `sxdg` instead of the marked rz(pi); sx; rz(pi) sequence.
    bool extended_gates = false;
};

/// Writes the circuit in the subset above. Angles use 17 significant digits,
/// so parse_qasm(emit_qasm(c)) reproduces c op for op (origin tags excepted).
std::string emit_qasm(const Circuit& circuit, const EmitOptions& options = {});

}  // namespace gateimpact
