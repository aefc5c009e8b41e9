#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "qwalk/qwalk.hpp"

using namespace qwalk;

TEST_CASE("cycle qubit budget is n+1") {
  for (int n = 1; n <= 12; ++n) {
    const FamilyInstance inst = build_cycle_pow2(n);
    CHECK(inst.circuit.non_ancilla_wires() == n + 1);
    CHECK(inst.circuit.meta.at("qubits") == n + 1);
  }
}

TEST_CASE("smallest cycles match the oracle") {
  for (int n : {1, 2, 3}) {
    const EquivalenceReport rep = check_equivalence(build_cycle_pow2(n));
    CHECK(rep.pass);
    CHECK(rep.deviation <= 1e-10);
  }
  for (FamilyCoin coin : {FamilyCoin::Hadamard, FamilyCoin::M, FamilyCoin::Grover})
    CHECK(check_equivalence(build_cycle_pow2(2, coin)).pass);
}

TEST_CASE("embedded cycles match the oracle under every coin") {
  for (std::size_t size : {3ul, 5ul})
    CHECK(check_equivalence(build_cycle_any(size)).pass);
  for (FamilyCoin coin : {FamilyCoin::Hadamard, FamilyCoin::M, FamilyCoin::Grover})
    CHECK(check_equivalence(build_cycle_any(6, coin)).pass);
}

TEST_CASE("walk_unitary cycle-directed mode matches the cycle builder's oracle") {
  const WalkOperator direct =
      walk_unitary(cycle_graph(8), CoinKind::HadamardProduct, ShiftMode::CycleDirected);
  const WalkOperator from_builder = build_cycle_pow2(3).oracle();
  CHECK(direct.unitary().max_abs_diff(from_builder.unitary()) == 0.0);
}

TEST_CASE("cycle of 25 embeds in 5 node qubits with 7 empty labels") {
  const FamilyInstance inst = build_cycle_any(25);
  CHECK(inst.circuit.reg.wires() == 6);  // 5 node + 1 coin
  CHECK(inst.circuit.meta.at("empty_node_labels") == 7);
  CHECK(inst.graph.n == 25);
  CHECK(check_equivalence(inst).pass);
}

TEST_CASE("cycle 8 built generically equals the power-of-two build") {
  const FamilyInstance a = build_cycle_any(8);
  const FamilyInstance b = build_cycle_pow2(3);
  const Matrix ua = circuit_unitary(a.circuit);
  const Matrix ub = circuit_unitary(b.circuit);
  CHECK(ua.max_abs_diff(ub) <= 1e-12);
}

TEST_CASE("cycle 6 keeps all probability on the valid subspace over steps") {
  const FamilyInstance inst = build_cycle_any(6);
  StateVector st = new_basis_state(
      inst.circuit.reg, inst.encoding.label_of(inst.encoding.arc_index(2, 1)));
  st = run(inst.circuit, st, 3);
  double valid_mass = 0.0;
  for (double p : node_distribution(st, inst.encoding)) valid_mass += p;
  CHECK(std::abs(valid_mass - 1.0) <= 1e-12);
}

TEST_CASE("cycle dispatch and domain errors") {
  CHECK(build_cycle(16).circuit.meta.at("size") == 16);
  CHECK_THROWS_AS(build_cycle(1), DomainError);
  CHECK_THROWS_AS(build_cycle_pow2(0), DomainError);
  CHECK_THROWS_AS(build_cycle_any(2), DomainError);
}

TEST_CASE("families reject coins they cannot realize") {
  CHECK_THROWS_AS(build_cycle_pow2(2, FamilyCoin::T), DomainError);
  CHECK_THROWS_AS(build_complete_selfloops(2, FamilyCoin::T), DomainError);
  CHECK_THROWS_AS(build_complete_qutrit(1, FamilyCoin::Hadamard), DomainError);
  CHECK_THROWS_AS(build_torus_grid({2, 2}, FamilyCoin::T), DomainError);
}

TEST_CASE("torus 4x4 register and equivalence") {
  const FamilyInstance inst = build_torus_grid({2, 2}, FamilyCoin::Grover);
  CHECK(inst.circuit.reg.wires() == 6);  // 4 node + 2 coin qubits
  CHECK(inst.graph.n == 16);
  for (int v = 0; v < inst.graph.n; ++v) CHECK(inst.graph.degree(v) == 4);
  CHECK(check_equivalence(inst).pass);
  CHECK(check_equivalence(build_torus_grid({2, 2}, FamilyCoin::Hadamard)).pass);
}

TEST_CASE("torus rejects size-2 dimensions and single dimensions") {
  CHECK_THROWS_AS(build_torus_grid({1, 2}), DomainError);
  CHECK_THROWS_AS(build_torus_grid({3}), DomainError);
}

TEST_CASE("larger tori match the oracle") {
  // 8x4: unequal exponents; 4x4x4: six directions embedded in eight coin
  // labels, so the Grover coin is the padded custom payload
  CHECK(check_equivalence(build_torus_grid({3, 2}, FamilyCoin::Grover)).pass);
  const FamilyInstance d3 = build_torus_grid({2, 2, 2}, FamilyCoin::Grover);
  CHECK(d3.circuit.meta.at("empty_coin_labels") == 2);
  CHECK(check_equivalence(d3).pass);
  CHECK_THROWS_AS(build_torus_grid({2, 2, 2}, FamilyCoin::Hadamard), DomainError);
}

TEST_CASE("uniform coin at a torus corner spreads evenly to the 4 neighbors") {
  const FamilyInstance inst = build_torus_grid({2, 2}, FamilyCoin::Grover);
  const WalkOperator op = inst.oracle();
  // uniform over the 4 directions at vertex 0, shifted one step with C = G_4:
  // G_4 fixes the uniform coin state, so each neighbor receives mass 1/4
  std::vector<cplx> amp(op.dim(), 0.0);
  for (int a = 0; a < 4; ++a) amp[op.arcs.index(0, a)] = 0.5;
  const auto dist = simulate_walk(op, amp, 1);
  int touched = 0;
  for (int v = 0; v < inst.graph.n; ++v) {
    if (dist[1][v] == 0.0) continue;
    ++touched;
    CHECK(inst.graph.has_edge(0, v));
    CHECK(std::abs(dist[1][v] - 0.25) <= 1e-12);
  }
  CHECK(touched == 4);
}

TEST_CASE("twisted torus") {
  SUBCASE("zero twists emit exactly the plain torus gates") {
    const FamilyInstance tw = build_twisted_torus({8, 8, 4}, {0, 0, 0});
    const FamilyInstance plain = build_torus_grid({3, 3, 2});
    REQUIRE(tw.circuit.gates.size() == plain.circuit.gates.size());
    for (std::size_t i = 0; i < tw.circuit.gates.size(); ++i) {
      CHECK(tw.circuit.gates[i].targets == plain.circuit.gates[i].targets);
      CHECK(tw.circuit.gates[i].controls == plain.circuit.gates[i].controls);
      CHECK(tw.circuit.gates[i].payload.max_abs_diff(plain.circuit.gates[i].payload) ==
            0.0);
    }
  }
  SUBCASE("8x8x4 register layout") {
    const FamilyInstance inst = build_twisted_torus({8, 8, 4}, {1, 0, 0});
    CHECK(inst.circuit.reg.wires() == 11);  // 3+3+2 node + 3 coin
    CHECK(inst.circuit.meta.at("empty_coin_labels") == 2);
    CHECK(inst.graph.n == 256);
  }
  SUBCASE("twist wraps into the next coordinate") {
    const FamilyInstance inst = build_twisted_torus({4, 4, 4}, {1, 0, 0});
    // +x from (3,2,1) lands on (0,3,1): vertex 3*16+2*4+1 -> 0*16+3*4+1
    const int from = 3 * 16 + 2 * 4 + 1;
    const int to = 0 * 16 + 3 * 4 + 1;
    CHECK(inst.graph.has_edge(from, to));
    CHECK(inst.arcs.neighbor[inst.arcs.index(from, 1)] == to);  // coin 1 = +dim0
    CHECK(check_equivalence(inst).pass);
  }
  SUBCASE("oversized twists are rejected") {
    CHECK_THROWS_AS(build_twisted_torus({4, 4}, {4, 0}), DomainError);
    CHECK_THROWS_AS(build_twisted_torus({4, 5}, {0, 0}), DomainError);
  }
  SUBCASE("both twists active, including the cyclic wrap into coordinate 0") {
    CHECK(check_equivalence(build_twisted_torus({4, 4}, {3, 2})).pass);
    CHECK(check_equivalence(build_twisted_torus({4, 8}, {5, 1})).pass);
  }
}

TEST_CASE("cycle-16 distributions match the oracle over 32 steps") {
  const FamilyInstance inst = build_cycle_pow2(4);
  const WalkOperator op = inst.oracle();

  std::vector<cplx> amp(op.dim(), 0.0);
  amp[op.arcs.index(5, 1)] = 1.0;
  const auto oracle_dists = simulate_walk(op, amp, 32);

  StateVector st = new_basis_state(
      inst.circuit.reg, inst.encoding.label_of(inst.encoding.arc_index(5, 1)));
  st = run(inst.circuit, st, 32);
  const auto circuit_dist = node_distribution(st, inst.encoding);
  for (int v = 0; v < 16; ++v)
    CHECK(std::abs(circuit_dist[v] - oracle_dists[32][v]) <= 1e-10);
}

TEST_CASE("complete graph with self-loops") {
  SUBCASE("Hadamard coin: n Hadamards and 3n CNOTs, nothing else") {
    for (int n = 2; n <= 6; ++n) {
      const GateCounts gc = gate_counts(build_complete_selfloops(n).circuit);
      CHECK(gc.hadamards == static_cast<std::size_t>(n));
      CHECK(gc.singles == static_cast<std::size_t>(n));
      CHECK(gc.cnots == static_cast<std::size_t>(3 * n));
      CHECK(gc.multi_total() == 0);
      CHECK(gc.customs == 0);
    }
  }
  SUBCASE("Grover coin: exactly one controlled gate in the coin subcircuit") {
    for (int n = 2; n <= 6; ++n) {
      const FamilyInstance inst = build_complete_selfloops(n, FamilyCoin::Grover);
      const std::size_t coin_gates = inst.circuit.meta.at("coin_gates");
      std::size_t controlled = 0;
      for (std::size_t i = 0; i < coin_gates; ++i)
        if (!inst.circuit.gates[i].controls.empty()) ++controlled;
      CHECK(controlled == 1);
      // and that one gate carries n-1 controls
      for (std::size_t i = 0; i < coin_gates; ++i)
        if (!inst.circuit.gates[i].controls.empty())
          CHECK(inst.circuit.gates[i].controls.size() ==
                static_cast<std::size_t>(n - 1));
    }
  }
  SUBCASE("one Hadamard step from (node 0, coin 0) is uniform over nodes") {
    const FamilyInstance inst = build_complete_selfloops(2);
    const StateVector start = new_basis_state(
        inst.circuit.reg, inst.encoding.label_of(inst.encoding.arc_index(0, 0)));
    const auto dist = node_distribution(run(inst.circuit, start, 1), inst.encoding);
    for (double p : dist) CHECK(std::abs(p - 0.25) <= 1e-12);
  }
  SUBCASE("small instances match the oracle, both coins") {
    CHECK(check_equivalence(build_complete_selfloops(1)).pass);
    CHECK(check_equivalence(build_complete_selfloops(2)).pass);
    CHECK(check_equivalence(build_complete_selfloops(3)).pass);
    CHECK(check_equivalence(build_complete_selfloops(1, FamilyCoin::Grover)).pass);
    CHECK(check_equivalence(build_complete_selfloops(2, FamilyCoin::Grover)).pass);
    CHECK(check_equivalence(build_complete_selfloops(3, FamilyCoin::Grover)).pass);
  }
}

TEST_CASE("complete bipartite graph") {
  SUBCASE("graph structure: opposite parities joined, degree 2^{n-1}") {
    const FamilyInstance inst = build_complete_bipartite(4);
    CHECK(inst.graph.n == 16);
    for (int v = 0; v < 16; ++v) CHECK(inst.graph.degree(v) == 8);
    for (const auto& [a, b] : inst.graph.edges) CHECK(((a ^ b) & 1) == 1);
  }
  SUBCASE("strictly fewer gates than the complete graph") {
    for (int n = 2; n <= 6; ++n)
      CHECK(build_complete_bipartite(n).circuit.gates.size() <
            build_complete_selfloops(n).circuit.gates.size());
  }
  SUBCASE("every shifted arc joins opposite parities") {
    const FamilyInstance inst = build_complete_bipartite(3);
    for (int i = 0; i < inst.arcs.arc_count(); ++i) {
      const int from = inst.arcs.vertex_of[i];
      const int to = inst.arcs.vertex_of[inst.shift[i]];
      CHECK(((from ^ to) & 1) == 1);
    }
  }
  SUBCASE("K_{2,2} is the 4-cycle and matches its oracle") {
    const FamilyInstance inst = build_complete_bipartite(2);
    CHECK(inst.graph.edges.size() == 4);
    for (int v = 0; v < 4; ++v) CHECK(inst.graph.degree(v) == 2);
    CHECK(check_equivalence(inst).pass);
  }
  SUBCASE("n=3,4 match the oracle") {
    CHECK(check_equivalence(build_complete_bipartite(3)).pass);
    CHECK(check_equivalence(build_complete_bipartite(4)).pass);
  }
  SUBCASE("n=1 is rejected") {
    CHECK_THROWS_AS(build_complete_bipartite(1), DomainError);
  }
}

TEST_CASE("glued trees") {
  SUBCASE("depth 4 has 62 vertices on at most 11 qubits") {
    const FamilyInstance inst = build_glued_tree(4);
    CHECK(inst.graph.n == 62);
    CHECK(inst.circuit.meta.at("vertex_count") == 62);
    CHECK(inst.circuit.non_ancilla_wires() <= 11);
  }
  SUBCASE("junction vertices have degree 3, roots degree 2") {
    const FamilyInstance inst = build_glued_tree(3);
    int deg2 = 0;
    for (int v = 0; v < inst.graph.n; ++v) {
      const int d = inst.graph.degree(v);
      CHECK((d == 2 || d == 3));
      deg2 += d == 2;
    }
    CHECK(deg2 == 2);  // exactly the two roots
  }
  SUBCASE("depth 2 and 3 match the oracle") {
    CHECK(check_equivalence(build_glued_tree(2)).pass);
    CHECK(check_equivalence(build_glued_tree(3)).pass);
  }
  SUBCASE("gate count follows the recorded linear formula") {
    for (int l = 2; l <= 6; ++l) {
      const FamilyInstance inst = build_glued_tree(l);
      CHECK(inst.circuit.gates.size() == static_cast<std::size_t>(18 * l + 5));
      CHECK(inst.circuit.meta.at("gate_formula") == 18 * l + 5);
    }
  }
  SUBCASE("depth below 2 is rejected") {
    CHECK_THROWS_AS(build_glued_tree(1), DomainError);
  }
}

TEST_CASE("qutrit complete graphs") {
  SUBCASE("one T step from (node 0, coin 0) is uniform over the 3 nodes") {
    const FamilyInstance inst = build_complete_qutrit(1, FamilyCoin::T);
    const StateVector start = new_basis_state(
        inst.circuit.reg, inst.encoding.label_of(inst.encoding.arc_index(0, 0)));
    const auto dist = node_distribution(run(inst.circuit, start, 1), inst.encoding);
    for (double p : dist) CHECK(std::abs(p - 1.0 / 3.0) <= 1e-12);
  }
  SUBCASE("T coin subcircuit is fully separable: n single-qutrit gates") {
    const FamilyInstance inst = build_complete_qutrit(2, FamilyCoin::T);
    const std::size_t coin_gates = inst.circuit.meta.at("coin_gates");
    CHECK(coin_gates == 2);
    for (std::size_t i = 0; i < coin_gates; ++i) {
      CHECK(inst.circuit.gates[i].targets.size() == 1);
      CHECK(inst.circuit.gates[i].controls.empty());
    }
  }
  SUBCASE("Grover coin block at n=1 is G_3") {
    const FamilyInstance inst = build_complete_qutrit(1, FamilyCoin::Grover);
    CHECK(inst.coin_blocks[0].max_abs_diff(payload::grover(3)) <= 1e-15);
    // the circuit's three coin gates compose to the same block
    Circuit coin_only(Register({3}));
    const std::size_t coin_gates = inst.circuit.meta.at("coin_gates");
    for (std::size_t i = 0; i < coin_gates; ++i) {
      Gate g = inst.circuit.gates[i];
      g.targets = {0};
      coin_only.add(g);
    }
    CHECK(circuit_unitary(coin_only).max_abs_diff(payload::grover(3)) <= 1e-12);
  }
  SUBCASE("n=1 and n=2 match the oracle under both coins") {
    CHECK(check_equivalence(build_complete_qutrit(1, FamilyCoin::T)).pass);
    CHECK(check_equivalence(build_complete_qutrit(2, FamilyCoin::T)).pass);
    CHECK(check_equivalence(build_complete_qutrit(1, FamilyCoin::Grover)).pass);
    CHECK(check_equivalence(build_complete_qutrit(2, FamilyCoin::Grover)).pass);
  }
}

TEST_CASE("valid-subspace closure and ancilla restoration across families") {
  const std::vector<FamilyInstance> instances = {
      build_cycle_pow2(2),
      build_cycle_any(6),
      build_torus_grid({2, 2}),
      build_twisted_torus({4, 4, 4}, {1, 0, 0}),
      build_complete_selfloops(2, FamilyCoin::Grover),
      build_complete_bipartite(3),
      build_glued_tree(2),
      build_complete_qutrit(1, FamilyCoin::Grover),
  };
  for (const FamilyInstance& inst : instances) {
    const std::string family = inst.circuit.meta.at("family");
    INFO(family);
    CHECK(testutil::ancillas_restored(inst));
  }
}

TEST_CASE("family dispatcher") {
  FamilySpec spec;
  spec.family = "cycle";
  spec.params = {{"size", 16}, {"coin", "hadamard"}};
  CHECK(build_family(spec).circuit.non_ancilla_wires() == 5);

  spec.family = "glued-tree";
  spec.params = {{"depth", 4}};
  CHECK(build_family(spec).circuit.meta.at("vertex_count") == 62);

  spec.family = "nonesuch";
  CHECK_THROWS_AS(build_family(spec), DomainError);

  spec.family = "cycle";
  spec.params = {{"size", 0}};
  CHECK_THROWS_AS(build_family(spec), DomainError);
}

TEST_CASE("cycle gate growth is affine in n") {
  for (int n = 2; n <= 12; ++n) {
    const FamilyInstance inst = build_cycle_pow2(n);
    CHECK(inst.circuit.gates.size() == static_cast<std::size_t>(2 * n + 1));
    CHECK(inst.circuit.meta.at("gate_formula") == 2 * n + 1);
  }
}

TEST_CASE("encoding validation") {
  const Register reg = Register::qubits(2);
  CHECK_THROWS_AS(Encoding(reg, {0}, {1}, {}, {0, 0}, {0, 1}, 2), DomainError);
  CHECK_THROWS_AS(Encoding(reg, {0}, {1}, {}, {0, 9}, {0, 1}, 2), DomainError);
  CHECK_THROWS_AS(Encoding(reg, {0}, {}, {1}, {0, 1}, {0, 1}, 2), DomainError);
}
