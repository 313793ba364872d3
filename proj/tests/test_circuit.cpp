#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "gateimpact/circuit.hpp"
#include "gateimpact/schedule.hpp"
#include "gateimpact/unitary.hpp"
#include "support/oracles.hpp"

using namespace gateimpact;
using std::numbers::pi;

namespace {

bool has_message(const std::vector<Violation>& v, std::string_view text) {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.message.find(text) != std::string::npos; });
}

Eigen::MatrixXcd single_gate_unitary(const GateOp& op, int n) {
    Circuit c(n);
    c.add(op);
    return unitary_of(c);
}

}  // namespace

TEST_CASE("validate accepts well-formed circuits and reports each violation") {
    Circuit ok(2);
    ok.add(GateOp::cx(0, 1));
    CHECK(validate(ok).empty());

    Circuit repeated(2);
    repeated.add(GateOp::cx(0, 0));
    auto v = validate(repeated);
    REQUIRE(v.size() == 1);
    CHECK(v[0].op_index == 0);
    CHECK(has_message(v, "repeated qubit"));

    Circuit out_of_range(2);
    out_of_range.add(GateOp::x(3));
    v = validate(out_of_range);
    REQUIRE(v.size() == 1);
    CHECK(has_message(v, "qubit index out of range"));

    Circuit late(1, 1);
    late.add(GateOp::measure(0, 0)).add(GateOp::x(0));
    v = validate(late);
    REQUIRE(v.size() == 1);
    CHECK(v[0].op_index == 1);

    GateOp bad_barrier = GateOp::barrier({0});
    bad_barrier.adjoint = true;
    Circuit adj(1);
    adj.add(bad_barrier);
    CHECK(has_message(validate(adj), "adjoint"));

    Circuit clbits(1, 1);
    clbits.add(GateOp::measure(0, 4));
    CHECK(has_message(validate(clbits), "classical bit index out of range"));
}

TEST_CASE("adjoint_of follows the per-kind rules") {
    const GateOp rz = adjoint_of(GateOp::rz(0, pi / 2));
    CHECK(rz.kind == GateKind::RZ);
    CHECK(rz.angle == doctest::Approx(-pi / 2));
    CHECK_FALSE(rz.adjoint);

    CHECK(adjoint_of(GateOp::x(0)) == GateOp::x(0));
    CHECK(adjoint_of(GateOp::cx(0, 1)) == GateOp::cx(0, 1));

    const GateOp sxdg = adjoint_of(GateOp::sx(0));
    CHECK(sxdg.adjoint);
    Circuit pair(1);
    pair.add(GateOp::sx(0)).add(sxdg);
    CHECK(equivalent_up_to_phase(unitary_of(pair), Eigen::MatrixXcd::Identity(2, 2), 1e-12));

    CHECK_THROWS_AS(adjoint_of(GateOp::barrier({0})), CircuitError);
    CHECK_THROWS_AS(adjoint_of(GateOp::measure(0, 0)), CircuitError);
}

TEST_CASE("gate followed by its adjoint is identity; double adjoint is the gate") {
    const std::vector<GateOp> ops{GateOp::rz(0, 0.37), GateOp::rz(1, -2.5), GateOp::sx(0), GateOp::sx(1, true),
                                  GateOp::x(1), GateOp::cx(0, 1), GateOp::cx(1, 0)};
    for (const auto& g : ops) {
        Circuit c(2);
        c.add(g).add(adjoint_of(g));
        CHECK(equivalent_up_to_phase(unitary_of(c), Eigen::MatrixXcd::Identity(4, 4), 1e-10));
        CHECK(equivalent_up_to_phase(single_gate_unitary(adjoint_of(adjoint_of(g)), 2), single_gate_unitary(g, 2), 1e-10));
    }
}

TEST_CASE("compute_layers is ASAP with barrier fences") {
    Circuit par(2);
    par.add(GateOp::x(0)).add(GateOp::x(1));
    auto s = compute_layers(par);
    CHECK(s.layer_of == std::vector<int>{0, 0});
    CHECK(s.num_layers == 1);

    Circuit seq(1);
    seq.add(GateOp::x(0)).add(GateOp::x(0));
    CHECK(compute_layers(seq).layer_of == std::vector<int>{0, 1});

    Circuit fenced(2);
    fenced.add(GateOp::x(0)).add(GateOp::barrier({0, 1})).add(GateOp::x(1));
    s = compute_layers(fenced);
    CHECK(s.layer_of == std::vector<int>{0, 1, 2});
    CHECK(s.num_layers == 3);

    Circuit measured(2);
    measured.add(GateOp::x(0)).measure_all();
    s = compute_layers(measured);
    CHECK(s.num_layers == 1);
    CHECK(s.layer_of[1] == 1);
    CHECK(s.layer_of[2] == 1);
}

TEST_CASE("layer durations take the slowest op in the layer") {
    GateDurations d{.sx_ns = 35, .x_ns = 35, .cx_ns = 300, .measure_ns = 1000};
    Circuit c(3);
    c.add(GateOp::cx(0, 1)).add(GateOp::x(2)).add(GateOp::rz(2, 1.0)).measure_all();
    auto s = compute_layers(c, &d);
    REQUIRE(s.num_layers == 2);
    CHECK(s.layer_duration[0] == 300.0);
    CHECK(s.layer_duration[1] == 0.0);
    CHECK(compute_layers(c).layer_duration == std::vector<double>{0.0, 0.0});
}

TEST_CASE("schedule invariants on random circuits") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Circuit c = oracle::random_circuit(rng, 4, 30, false, true);
        const auto s = compute_layers(c);
        CHECK(s.layer_of == compute_layers(c).layer_of);
        std::vector<int> last(4, -1);
        for (std::size_t i = 0; i < c.ops.size(); ++i) {
            for (Qubit q : c.ops[i].qubits) {
                CHECK(s.layer_of[i] > last[static_cast<std::size_t>(q)]);
                last[static_cast<std::size_t>(q)] = s.layer_of[i];
            }
        }
        // swapping adjacent qubit-disjoint ops leaves the depth alone
        for (std::size_t i = 0; i + 1 < c.ops.size(); ++i) {
            const auto& a = c.ops[i].qubits;
            const auto& b = c.ops[i + 1].qubits;
            if (std::none_of(a.begin(), a.end(), [&](Qubit q) { return std::find(b.begin(), b.end(), q) != b.end(); })) {
                Circuit swapped = c;
                std::swap(swapped.ops[i], swapped.ops[i + 1]);
                CHECK(compute_layers(swapped).num_layers == s.num_layers);
            }
        }
    }
}

TEST_CASE("unitary_of examples") {
    CHECK(unitary_of(Circuit(1)).isApprox(Eigen::MatrixXcd::Identity(2, 2)));

    Circuit sxsx(1);
    sxsx.add(GateOp::sx(0)).add(GateOp::sx(0));
    CHECK(equivalent_up_to_phase(unitary_of(sxsx), single_gate_unitary(GateOp::x(0), 1), 1e-12));

    Circuit cxcx(2);
    cxcx.add(GateOp::cx(0, 1)).add(GateOp::cx(0, 1));
    CHECK(unitary_of(cxcx).isApprox(Eigen::MatrixXcd::Identity(4, 4)));

    // little-endian: CX(0,1) maps |01> (index 1, qubit 0 set) to |11> (index 3)
    const auto cx = single_gate_unitary(GateOp::cx(0, 1), 2);
    CHECK(std::abs(cx(3, 1) - Complex(1.0)) < 1e-15);

    Circuit measured(1, 1);
    measured.add(GateOp::measure(0, 0));
    CHECK_THROWS_AS(unitary_of(measured), CircuitError);
    CHECK_THROWS_AS(unitary_of(Circuit(11)), CircuitError);
}

TEST_CASE("unitary_of is unitary on random circuits") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto u = unitary_of(oracle::random_circuit(rng, 3, 25, false, true));
        const auto err = (u * u.adjoint() - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff();
        CHECK(err <= 1e-10);
    }
}

TEST_CASE("equivalent_up_to_phase") {
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
    CHECK(equivalent_up_to_phase(id, id, 1e-9));
    CHECK(equivalent_up_to_phase(id, std::polar(1.0, pi / 7) * id, 1e-9));
    CHECK_FALSE(equivalent_up_to_phase(single_gate_unitary(GateOp::x(0), 1), id, 1e-9));
    CHECK_THROWS_AS(equivalent_up_to_phase(id, Eigen::MatrixXcd::Identity(4, 4), 1e-9), std::invalid_argument);
}
