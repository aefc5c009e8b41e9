#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "circuit.hpp"
#include "core.hpp"
#include "gate.hpp"

namespace qwalk {

namespace synth {

// Appends the +1 (up) or -1 (down) cyclic permutation of the lexicographic
// labels held by `wires` (most significant first). Every emitted gate carries
// `guards` as extra controls. Standard borrow/carry cascade: the target flips
// when all less significant wires are 1 (up) or 0 (down).
inline void add_increment(Circuit& circ, const std::vector<int>& wires, bool up,
                          const std::vector<Control>& guards = {}) {
  const int n = static_cast<int>(wires.size());
  for (int i = 0; i < n; ++i) {
    std::vector<Control> ctl = guards;
    for (int j = i + 1; j < n; ++j) ctl.push_back({wires[j], up ? 1 : 0});
    circ.add(gates::x(wires[i], std::move(ctl)));
  }
}

// One differing wire of a transposition: its value in label A and in label B.
struct WireDiff {
  int wire = 0;
  int a = 0;
  int b = 0;
};

// Appends the transposition exchanging pattern A and pattern B over the
// wires named in `diffs`, for every assignment of the unnamed wires, with
// `guards` as additional controls on every gate. Flips the differing wires
// one at a time, each flip controlled on all other differing wires matching
// the current intermediate pattern, mirrored around the middle flip:
// 2m-1 gates for m differing wires.
inline void add_masked_transposition(Circuit& circ, const std::vector<WireDiff>& diffs,
                                     const std::vector<Control>& guards = {}) {
  const int m = static_cast<int>(diffs.size());
  if (m == 0) return;
  const auto emit = [&](int i, bool middle) {
    std::vector<Control> ctl = guards;
    for (int j = 0; j < (middle ? m - 1 : m); ++j) {
      if (j == i) continue;
      ctl.push_back({diffs[j].wire, j < i ? diffs[j].b : diffs[j].a});
    }
    circ.add(gates::x(diffs[i].wire, std::move(ctl)));
  };
  for (int i = 0; i < m - 1; ++i) emit(i, false);
  emit(m - 1, true);
  for (int i = m - 2; i >= 0; --i) emit(i, false);
}

// Transposition of two full labels on qubit `wires`, fixing every other label:
// guards on all agreeing wires keep the flips selective.
inline void add_label_transposition(Circuit& circ, const std::vector<int>& wires,
                                    std::size_t label_a, std::size_t label_b,
                                    const std::vector<Control>& guards = {}) {
  if (label_a == label_b) return;
  const int n = static_cast<int>(wires.size());
  std::vector<WireDiff> diffs;
  std::vector<Control> all_guards = guards;
  for (int i = 0; i < n; ++i) {
    const int bit_a = static_cast<int>((label_a >> (n - 1 - i)) & 1u);
    const int bit_b = static_cast<int>((label_b >> (n - 1 - i)) & 1u);
    if (bit_a != bit_b)
      diffs.push_back({wires[i], bit_a, bit_b});
    else
      all_guards.push_back({wires[i], bit_a});
  }
  add_masked_transposition(circ, diffs, all_guards);
}

}  // namespace synth

// Basis-state permutation specifications synthesizable as X-payload circuits.
struct PermutationSpec {
  enum class Kind { Rotation, Transposition, Block };
  Kind kind = Kind::Rotation;
  int wires = 0;
  std::size_t rotation = 0;                 // Rotation: amount, reduced mod 2^n
  std::size_t label_a = 0, label_b = 0;     // Transposition
  int block_exp = 0;                        // Block: low-wire count m
  std::vector<std::size_t> table;           // Block: permutation of 2^m labels

  // The permutation itself, by index arithmetic.
  std::size_t image(std::size_t label) const {
    const std::size_t dim = std::size_t{1} << wires;
    switch (kind) {
      case Kind::Rotation: return (label + rotation) % dim;
      case Kind::Transposition:
        if (label == label_a) return label_b;
        if (label == label_b) return label_a;
        return label;
      case Kind::Block: {
        const std::size_t block = std::size_t{1} << block_exp;
        return (label / block) * block + table[label % block];
      }
    }
    throw DomainError("unknown permutation kind");
  }
};

// +-1 cyclic permutation on n qubit wires as a cascade of C^kNOT gates,
// k = n-1 down to 0.
inline Circuit increment_circuit(int n, bool up = true) {
  if (n < 1) throw DomainError("increment needs at least one wire");
  Circuit circ(Register::qubits(n));
  std::vector<int> wires(n);
  for (int i = 0; i < n; ++i) wires[i] = i;
  synth::add_increment(circ, wires, up);
  circ.meta = {{"family", up ? "increment" : "decrement"},
               {"wires", n},
               {"gate_formula", n}};
  return circ;
}

// Rotation by k of the 2^n lexicographic labels, decomposed into one
// power-of-two stage per set bit of k. A stage of size 2^m is an increment
// cascade on the top n-m wires.
inline Circuit rotation_circuit(int n, std::size_t k) {
  if (n < 1) throw DomainError("rotation needs at least one wire");
  const std::size_t dim = std::size_t{1} << n;
  k %= dim;
  Circuit circ(Register::qubits(n));
  std::vector<std::size_t> stages;
  std::size_t formula = 0;
  for (int m = n - 1; m >= 0; --m) {
    if (!((k >> m) & 1u)) continue;
    stages.push_back(std::size_t{1} << m);
    formula += static_cast<std::size_t>(n - m);
    std::vector<int> wires(n - m);
    for (int i = 0; i < n - m; ++i) wires[i] = i;
    synth::add_increment(circ, wires, true);
  }
  circ.meta = {{"family", "rotation"},
               {"wires", n},
               {"amount", k},
               {"stages", stages},
               {"gate_formula", formula}};
  return circ;
}

// The single transposition label_a <-> label_b on n qubit wires:
// 2m-1 fully controlled flips, m = number of differing wires.
inline Circuit transposition_circuit(int n, std::size_t label_a, std::size_t label_b) {
  if (n < 1) throw DomainError("transposition needs at least one wire");
  const std::size_t dim = std::size_t{1} << n;
  if (label_a >= dim || label_b >= dim)
    throw DomainError("transposition label out of range");
  if (label_a == label_b) throw DomainError("transposition labels must differ");
  Circuit circ(Register::qubits(n));
  std::vector<int> wires(n);
  for (int i = 0; i < n; ++i) wires[i] = i;
  synth::add_label_transposition(circ, wires, label_a, label_b);
  const int m = std::popcount(label_a ^ label_b);
  circ.meta = {{"family", "transposition"},
               {"wires", n},
               {"label_a", label_a},
               {"label_b", label_b},
               {"differing_wires", m},
               {"gate_formula", 2 * m - 1}};
  return circ;
}

// Applies `table` to the low m wires of every 2^m-label block identically.
// Gates act on the low m wires only. Synthesized as the transpositions of the
// table's cycle decomposition.
inline Circuit block_permutation_circuit(int n, int m,
                                         const std::vector<std::size_t>& table) {
  if (n < 1 || m < 0 || m > n) throw DomainError("block permutation: bad wire counts");
  const std::size_t block = std::size_t{1} << m;
  if (table.size() != block) throw DomainError("block table has wrong size");
  std::vector<char> seen(block, 0);
  for (std::size_t x : table) {
    if (x >= block || seen[x]) throw DomainError("block table is not a bijection");
    seen[x] = 1;
  }

  Circuit circ(Register::qubits(n));
  std::vector<int> low(m);
  for (int i = 0; i < m; ++i) low[i] = n - m + i;

  std::vector<char> visited(block, 0);
  for (std::size_t start = 0; start < block; ++start) {
    if (visited[start]) continue;
    std::vector<std::size_t> cycle;
    for (std::size_t x = start; !visited[x]; x = table[x]) {
      visited[x] = 1;
      cycle.push_back(x);
    }
    // (c0 c1 ... ck) = transpositions (c_{k-1} c_k) .. (c0 c1) applied in order
    for (int i = static_cast<int>(cycle.size()) - 2; i >= 0; --i)
      synth::add_label_transposition(circ, low, cycle[i], cycle[i + 1]);
  }
  circ.meta = {{"family", "block_permutation"},
               {"wires", n},
               {"block_exp", m},
               {"table", table}};
  return circ;
}

inline Circuit synthesize(const PermutationSpec& spec) {
  switch (spec.kind) {
    case PermutationSpec::Kind::Rotation:
      return rotation_circuit(spec.wires, spec.rotation);
    case PermutationSpec::Kind::Transposition:
      return transposition_circuit(spec.wires, spec.label_a, spec.label_b);
    case PermutationSpec::Kind::Block:
      return block_permutation_circuit(spec.wires, spec.block_exp, spec.table);
  }
  throw DomainError("unknown permutation kind");
}

}  // namespace qwalk
