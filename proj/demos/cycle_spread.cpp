// Prints the node distribution of a Hadamard walk on a 64-cycle, one row per
// (step, vertex), comparing the circuit path against the direct arc-space
// evolution.

#include <cstdio>

#include "qwalk/qwalk.hpp"

int main() {
  using namespace qwalk;
  const FamilyInstance inst = build_cycle_pow2(6);
  const WalkOperator op = inst.oracle();

  std::vector<cplx> amp(op.dim(), 0.0);
  amp[op.arcs.index(0, 1)] = 1.0;
  const auto dists = simulate_walk(op, amp, 32);

  StateVector st = new_basis_state(
      inst.circuit.reg, inst.encoding.label_of(inst.encoding.arc_index(0, 1)));
  std::printf("step,vertex,probability,circuit_probability\n");
  for (std::size_t s = 0; s < dists.size(); ++s) {
    const auto circuit_dist = node_distribution(st, inst.encoding);
    for (std::size_t v = 0; v < dists[s].size(); ++v)
      if (dists[s][v] > 1e-12)
        std::printf("%zu,%zu,%.6f,%.6f\n", s, v, dists[s][v], circuit_dist[v]);
    if (s + 1 < dists.size()) st = run(inst.circuit, st, 1);
  }
  return 0;
}
