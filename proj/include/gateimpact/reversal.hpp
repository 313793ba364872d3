#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gateimpact/circuit.hpp"

namespace gateimpact {

inline constexpr int kDefaultReversals = 5;

enum class SkipReason { RzVirtual, Barrier, Measure };

std::string_view to_string(SkipReason reason);

struct Variant {
    std::size_t gate_index = 0;  // op index into the original circuit
    Circuit circuit;
};

struct Skipped {
    std::size_t op_index = 0;
    SkipReason reason = SkipReason::Barrier;
};

/// One variant circuit per eligible gate, each carrying `amplification`
/// barrier-isolated (adjoint, gate) pairs right after that gate.
struct ReversalSuite {
    Circuit original;
    std::vector<Variant> variants;  // ascending gate_index
    int amplification = kDefaultReversals;
    std::vector<Skipped> skipped;
};

/// CX/SX/X op indices, plus RZ when include_rz. Barriers and measurements never qualify.
std::vector<std::size_t> eligible_gate_indices(const Circuit& circuit, bool include_rz);

/// Original ops through gate_index, a full-width barrier, r copies of
/// (adjoint, gate), another full-width barrier, then the rest.
Circuit insert_reversal(const Circuit& circuit, std::size_t gate_index, int r);

ReversalSuite generate_suite(const Circuit& circuit, int r, bool include_rz);

/// Reverses a set of gates together. After the last member: barrier,
/// r copies of (member adjoints in reverse order, members in order), barrier.
/// Members must be contiguous per qubit: no other op touching a member qubit
/// may sit between the first and last member.
Circuit insert_group_reversal(const Circuit& circuit, std::vector<std::size_t> indices, int r);

}  // namespace gateimpact
