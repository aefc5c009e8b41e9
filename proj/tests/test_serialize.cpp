#include "doctest.h"
#include "helpers.hpp"
#include "qwalk/qwalk.hpp"

using namespace qwalk;

TEST_CASE("circuit files round-trip to the exact same unitary") {
  // families covering every gate kind, including custom payloads
  const std::vector<FamilyInstance> instances = {
      build_cycle_pow2(4),
      build_cycle_any(6),
      build_complete_selfloops(3, FamilyCoin::Grover),
      build_glued_tree(2),
      build_complete_qutrit(1, FamilyCoin::Grover),
  };
  for (const FamilyInstance& inst : instances) {
    const std::string family = inst.circuit.meta.at("family");
    INFO(family);
    const json j = json::parse(instance_to_json(inst).dump());
    const LoadedCircuit loaded = circuit_from_json(j);
    REQUIRE(loaded.encoding.has_value());
    CHECK(loaded.circuit.reg == inst.circuit.reg);
    CHECK(loaded.circuit.gates.size() == inst.circuit.gates.size());
    const Matrix a = circuit_unitary(inst.circuit);
    const Matrix b = circuit_unitary(loaded.circuit);
    CHECK(a.max_abs_diff(b) == 0.0);  // bit-exact round trip
    CHECK(loaded.encoding->arc_label == inst.encoding.arc_label);
    CHECK(loaded.graph->n == inst.graph.n);
  }
}

TEST_CASE("gate json round trip per kind") {
  const Register reg({2, 2, 3});
  const std::vector<Gate> gs = {
      gates::x(0, {{1, 1}}),
      gates::h(1),
      gates::m(0, {{1, 0}, {2, 2}}),
      gates::grover(2, {0}),
      gates::qutrit_t(-1, 2),
      gates::qutrit_shift(2, {{0, 1}}),
      gates::custom("z", payload::z(), {1}),
  };
  for (const Gate& g : gs) {
    const Gate back = gate_from_json(json::parse(gate_to_json(g).dump()));
    CHECK(back.kind == g.kind);
    CHECK(back.targets == g.targets);
    CHECK(back.controls == g.controls);
    CHECK(back.payload.max_abs_diff(g.payload) == 0.0);
    back.validate_for(reg);
  }
}

TEST_CASE("graph json round trip") {
  const Graph g(5, {{0, 1}, {1, 2}, {3, 4}}, {2});
  const Graph back = graph_from_json(json::parse(graph_to_json(g).dump()));
  CHECK(back.n == g.n);
  CHECK(back.edges == g.edges);
  CHECK(back.self_loops == g.self_loops);
}

TEST_CASE("unsupported schema is rejected") {
  json j = instance_to_json(build_cycle_pow2(2));
  j["schema"] = 99;
  CHECK_THROWS_AS(circuit_from_json(j), DomainError);
}

TEST_CASE("permutation circuits serialize without walk structure") {
  const Circuit circ = transposition_circuit(4, 0, 9);
  const LoadedCircuit loaded =
      circuit_from_json(json::parse(circuit_file_json(circ).dump()));
  CHECK(!loaded.encoding.has_value());
  CHECK(circuit_unitary(loaded.circuit).max_abs_diff(circuit_unitary(circ)) == 0.0);
}

TEST_CASE("distribution CSV format") {
  const std::vector<std::vector<double>> per_step = {{1.0, 0.0}, {0.5, 0.5}};
  CHECK(distribution_csv(per_step) ==
        "step,vertex,probability\n"
        "0,0,1\n0,1,0\n1,0,0.5\n1,1,0.5\n");
  // 12 significant digits
  CHECK(format_probability(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("scaling CSV has a header and per-k columns") {
  const auto rows = scaling_report(
      [](double p) {
        return transposition_circuit(static_cast<int>(p), 0,
                                     (std::size_t{1} << static_cast<int>(p)) - 1);
      },
      {3, 4});
  const std::string csv = scaling_csv(rows);
  CHECK(csv.find("param,qubits,singles,hadamard,cnot,multi,custom") == 0);
  CHECK(csv.find("c2not,c3not") != std::string::npos);
  // n=4 worst case: 7 multi-controlled gates
  CHECK(csv.find("4,4,0,0,0,7,0") != std::string::npos);
}

TEST_CASE("empty scaling table is just the header") {
  const std::string csv = scaling_csv({});
  CHECK(csv == "param,qubits,singles,hadamard,cnot,multi,custom,c2not_equivalent,total,formula\n");
}
