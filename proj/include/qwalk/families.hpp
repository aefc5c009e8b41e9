#pragma once

#include <bit>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "circuit.hpp"
#include "core.hpp"
#include "encoding.hpp"
#include "gate.hpp"
#include "graph.hpp"
#include "perm_synth.hpp"
#include "walk.hpp"
#include "json.hpp"

namespace qwalk {

// Coin choices exposed by the family builders.
enum class FamilyCoin { Hadamard, Grover, M, T };

inline std::string family_coin_name(FamilyCoin c) {
  switch (c) {
    case FamilyCoin::Hadamard: return "hadamard";
    case FamilyCoin::Grover: return "grover";
    case FamilyCoin::M: return "m";
    case FamilyCoin::T: return "t";
  }
  return "?";
}

inline FamilyCoin parse_family_coin(const std::string& s) {
  if (s == "hadamard" || s == "h") return FamilyCoin::Hadamard;
  if (s == "grover" || s == "g") return FamilyCoin::Grover;
  if (s == "m") return FamilyCoin::M;
  if (s == "t") return FamilyCoin::T;
  throw DomainError("unknown coin \"" + s + "\"");
}

// One-step walk circuit plus the independently built arc-space pieces it is
// checked against.
struct FamilyInstance {
  Circuit circuit;
  Graph graph;
  ArcSpace arcs;
  std::vector<int> shift;           // oracle arc permutation
  std::vector<Matrix> coin_blocks;  // oracle per-vertex coin
  Encoding encoding;

  WalkOperator oracle() const { return WalkOperator(arcs, shift, coin_blocks); }
};

namespace detail {

// Identity arc->label map for families whose register is (node value, coin
// value) with every label valid.
inline Encoding product_encoding(const Register& reg, std::vector<int> node_wires,
                                 std::vector<int> coin_wires, const ArcSpace& as,
                                 std::size_t coin_span) {
  std::vector<std::size_t> labels(as.arc_count());
  std::vector<int> vertices(as.arc_count());
  for (int v = 0; v < as.vertex_count; ++v)
    for (int j = as.first[v]; j < as.first[v + 1]; ++j) {
      labels[j] = static_cast<std::size_t>(v) * coin_span +
                  static_cast<std::size_t>(j - as.first[v]);
      vertices[j] = v;
    }
  return Encoding(reg, std::move(node_wires), std::move(coin_wires), {},
                  std::move(labels), std::move(vertices), as.vertex_count);
}

inline std::vector<Control> pattern_controls(const std::vector<int>& wires,
                                             std::size_t value) {
  std::vector<Control> ctl;
  ctl.reserve(wires.size());
  const int n = static_cast<int>(wires.size());
  for (int i = 0; i < n; ++i)
    ctl.push_back({wires[i], static_cast<int>((value >> (n - 1 - i)) & 1u)});
  return ctl;
}

// Grover coin G_{2^c} on c >= 1 qubit wires as M-conjugated reflection:
// G = (-M (x) M^{c-1}) C^{c-1}Z (Mdag)^{c} with the global -1 folded into one
// single-qubit payload.
inline void add_grover_reflection(Circuit& circ, const std::vector<int>& wires) {
  const int c = static_cast<int>(wires.size());
  if (c == 1) {
    circ.add(gates::x(wires[0]));  // G_2 is exactly X
    return;
  }
  for (int w : wires) circ.add(gates::custom("m_dag", payload::m_dag(), {w}));
  std::vector<Control> ctl;
  for (int i = 0; i + 1 < c; ++i) ctl.push_back({wires[i], 1});
  circ.add(gates::custom("z", payload::z(), {wires.back()}, std::move(ctl)));
  for (int i = 1; i < c; ++i) circ.add(gates::m(wires[i]));
  circ.add(gates::custom("neg_m", payload::m() * cplx{-1.0, 0.0}, {wires[0]}));
}

inline std::size_t grover_reflection_gates(int c) {
  return c == 1 ? 1 : static_cast<std::size_t>(2 * c + 1);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Cycles

// Walk along a cycle of 2^n vertices: n node qubits + 1 coin qubit. The coin
// acts on the coin qubit; increment fires on coin 1, decrement on coin 0.
inline FamilyInstance build_cycle_pow2(int n, FamilyCoin coin = FamilyCoin::Hadamard) {
  if (n < 1) throw DomainError("cycle exponent must be >= 1");
  const std::size_t size = std::size_t{1} << n;

  FamilyInstance inst;
  inst.circuit = Circuit(Register::qubits(n + 1));
  std::vector<int> node(n);
  for (int i = 0; i < n; ++i) node[i] = i;
  const int coin_wire = n;

  Matrix coin_block;
  switch (coin) {
    case FamilyCoin::Hadamard:
      inst.circuit.add(gates::h(coin_wire));
      coin_block = payload::h();
      break;
    case FamilyCoin::M:
      inst.circuit.add(gates::m(coin_wire));
      coin_block = payload::m();
      break;
    case FamilyCoin::Grover:
      inst.circuit.add(gates::x(coin_wire));  // G_2 = X
      coin_block = payload::grover(2);
      break;
    default:
      throw DomainError("cycle supports hadamard, m or grover coins");
  }
  synth::add_increment(inst.circuit, node, true, {{coin_wire, 1}});
  synth::add_increment(inst.circuit, node, false, {{coin_wire, 0}});

  inst.graph = cycle_graph(static_cast<int>(size));
  inst.arcs = cycle_arc_space(static_cast<int>(size));
  inst.shift = cycle_directed_shift(inst.arcs);
  inst.coin_blocks.assign(size, coin_block);
  inst.encoding =
      detail::product_encoding(inst.circuit.reg, node, {coin_wire}, inst.arcs, 2);

  inst.circuit.meta = {{"family", "cycle"},
                       {"size", size},
                       {"coin", family_coin_name(coin)},
                       {"qubits", n + 1},
                       {"coin_gates", 1},
                       {"gate_formula", 2 * n + 1},
                       {"vertex_count", size}};
  return inst;
}

// Cycle of arbitrary size N embedded in ceil(log2 N) node qubits. Labels
// N..2^nq-1 are empty states. The shift is a plain binary increment or
// decrement followed by a boundary-correcting transposition, so empty labels
// permute among themselves.
inline FamilyInstance build_cycle_any(std::size_t size,
                                      FamilyCoin coin = FamilyCoin::Hadamard) {
  if (size < 3) throw DomainError("cycle_any needs size >= 3");
  const int nq = ceil_log2(size);
  const std::size_t full = std::size_t{1} << nq;

  FamilyInstance inst;
  inst.circuit = Circuit(Register::qubits(nq + 1));
  std::vector<int> node(nq);
  for (int i = 0; i < nq; ++i) node[i] = i;
  const int coin_wire = nq;

  Matrix coin_block;
  switch (coin) {
    case FamilyCoin::Hadamard:
      inst.circuit.add(gates::h(coin_wire));
      coin_block = payload::h();
      break;
    case FamilyCoin::M:
      inst.circuit.add(gates::m(coin_wire));
      coin_block = payload::m();
      break;
    case FamilyCoin::Grover:
      inst.circuit.add(gates::x(coin_wire));
      coin_block = payload::grover(2);
      break;
    default:
      throw DomainError("cycle supports hadamard, m or grover coins");
  }

  std::size_t correction_gates = 0;
  synth::add_increment(inst.circuit, node, true, {{coin_wire, 1}});
  if (size < full) {
    // label `size` just wrapped from size-1; send it to 0
    synth::add_label_transposition(inst.circuit, node, size, 0, {{coin_wire, 1}});
    correction_gates += 2 * static_cast<std::size_t>(std::popcount(size)) - 1;
  }
  synth::add_increment(inst.circuit, node, false, {{coin_wire, 0}});
  if (size < full) {
    // label full-1 just wrapped from 0; send it to size-1
    synth::add_label_transposition(inst.circuit, node, full - 1, size - 1,
                                   {{coin_wire, 0}});
    correction_gates +=
        2 * static_cast<std::size_t>(std::popcount((full - 1) ^ (size - 1))) - 1;
  }

  inst.graph = cycle_graph(static_cast<int>(size));
  inst.arcs = cycle_arc_space(static_cast<int>(size));
  inst.shift = cycle_directed_shift(inst.arcs);
  inst.coin_blocks.assign(size, coin_block);

  std::vector<std::size_t> labels(inst.arcs.arc_count());
  std::vector<int> vertices(inst.arcs.arc_count());
  for (int v = 0; v < static_cast<int>(size); ++v)
    for (int a = 0; a < 2; ++a) {
      labels[inst.arcs.index(v, a)] = static_cast<std::size_t>(v) * 2 + a;
      vertices[inst.arcs.index(v, a)] = v;
    }
  inst.encoding = Encoding(inst.circuit.reg, node, {coin_wire}, {}, std::move(labels),
                           std::move(vertices), static_cast<int>(size));

  inst.circuit.meta = {{"family", "cycle"},
                       {"size", size},
                       {"coin", family_coin_name(coin)},
                       {"qubits", nq + 1},
                       {"coin_gates", 1},
                       {"gate_formula", 1 + 2 * nq + correction_gates},
                       {"empty_node_labels", full - size},
                       {"vertex_count", size}};
  return inst;
}

// Power-of-two sizes route through the exact builder, everything else through
// the embedded one.
inline FamilyInstance build_cycle(std::size_t size,
                                  FamilyCoin coin = FamilyCoin::Hadamard) {
  if (size < 2) throw DomainError("cycle needs size >= 2");
  if (is_power_of(size, 2))
    return build_cycle_pow2(ceil_log2(size), coin);
  return build_cycle_any(size, coin);
}

// ---------------------------------------------------------------------------
// Toroidal grids

namespace detail {

// Shared torus/twisted-torus construction. `exps[i]` is the exponent of
// coordinate i (size 2^exps[i]); `twists[i]` is added to coordinate i+1
// (cyclically) when coordinate i wraps around in the + direction.
inline FamilyInstance build_torus_impl(const std::vector<int>& exps,
                                       const std::vector<std::size_t>& twists,
                                       FamilyCoin coin, const std::string& family) {
  const int dims = static_cast<int>(exps.size());
  if (dims < 2) throw DomainError(family + " needs at least 2 dimensions");
  if (static_cast<int>(twists.size()) != dims)
    throw DomainError(family + ": one twist per dimension required");

  std::vector<std::size_t> sizes(dims);
  int node_count = 0;
  for (int i = 0; i < dims; ++i) {
    if (exps[i] < 1) throw DomainError(family + ": dimension exponent must be >= 1");
    if (exps[i] == 1)
      throw DomainError(family + ": dimension size 2 collapses the two directions");
    sizes[i] = std::size_t{1} << exps[i];
    node_count += exps[i];
  }
  for (int i = 0; i < dims; ++i)
    if (twists[i] >= sizes[(i + 1) % dims])
      throw DomainError(family + ": twist offset must be below the next coordinate size");

  const int directions = 2 * dims;
  const int coin_count = ceil_log2(static_cast<std::size_t>(directions));
  const std::size_t coin_span = std::size_t{1} << coin_count;

  FamilyInstance inst;
  inst.circuit = Circuit(Register::qubits(node_count + coin_count));
  std::vector<std::vector<int>> coord_wires(dims);
  {
    int w = 0;
    for (int i = 0; i < dims; ++i)
      for (int b = 0; b < exps[i]; ++b) coord_wires[i].push_back(w++);
  }
  std::vector<int> node_wires;
  for (const auto& cw : coord_wires)
    node_wires.insert(node_wires.end(), cw.begin(), cw.end());
  std::vector<int> coin_wires(coin_count);
  for (int i = 0; i < coin_count; ++i) coin_wires[i] = node_count + i;

  // coin
  std::size_t coin_gates = 0;
  if (static_cast<std::size_t>(directions) == coin_span) {
    if (coin == FamilyCoin::Hadamard) {
      for (int w : coin_wires) inst.circuit.add(gates::h(w));
      coin_gates = static_cast<std::size_t>(coin_count);
    } else if (coin == FamilyCoin::Grover) {
      detail::add_grover_reflection(inst.circuit, coin_wires);
      coin_gates = detail::grover_reflection_gates(coin_count);
    } else {
      throw DomainError(family + " supports grover or hadamard coins");
    }
  } else {
    if (coin == FamilyCoin::Hadamard)
      throw DomainError("Hadamard-product coin needs a power-of-2 direction count, got " +
                        std::to_string(directions));
    if (coin != FamilyCoin::Grover)
      throw DomainError(family + " supports grover or hadamard coins");
    if (coin_count > 3)
      throw CapError("Grover coin on " + std::to_string(directions) +
                     " directions needs a " + std::to_string(coin_count) +
                     "-wire payload; payloads are capped at 3 wires");
    Matrix block = Matrix::identity(coin_span);
    const Matrix g = payload::grover(static_cast<std::size_t>(directions));
    for (int r = 0; r < directions; ++r)
      for (int c = 0; c < directions; ++c) block.at(r, c) = g.at(r, c);
    inst.circuit.add(gates::custom("grover_embedded", std::move(block), coin_wires));
    coin_gates = 1;
  }

  // shift: coin 2i+1 increments coordinate i, coin 2i decrements it; a wrap
  // adds (or removes) the twist on the cyclically next coordinate
  for (int i = 0; i < dims; ++i) {
    const int next = (i + 1) % dims;
    const auto inc_ctl = detail::pattern_controls(coin_wires, 2 * i + 1);
    const auto dec_ctl = detail::pattern_controls(coin_wires, 2 * i);

    synth::add_increment(inst.circuit, coord_wires[i], true, inc_ctl);
    if (twists[i] > 0) {
      // fires only when coordinate i just wrapped to 0
      std::vector<Control> guard = inc_ctl;
      for (int w : coord_wires[i]) guard.push_back({w, 0});
      for (int m = exps[next] - 1; m >= 0; --m) {
        if (!((twists[i] >> m) & 1u)) continue;
        std::vector<int> top(coord_wires[next].begin(),
                             coord_wires[next].end() - m);
        synth::add_increment(inst.circuit, top, true, guard);
      }
    }
    synth::add_increment(inst.circuit, coord_wires[i], false, dec_ctl);
    if (twists[i] > 0) {
      // fires only when coordinate i just wrapped to size-1
      std::vector<Control> guard = dec_ctl;
      for (int w : coord_wires[i]) guard.push_back({w, 1});
      for (int m = exps[next] - 1; m >= 0; --m) {
        if (!((twists[i] >> m) & 1u)) continue;
        std::vector<int> top(coord_wires[next].begin(),
                             coord_wires[next].end() - m);
        synth::add_increment(inst.circuit, top, false, guard);
      }
    }
  }

  // vertex id = concatenated coordinates, most significant dimension first
  std::size_t vertex_count = 1;
  for (std::size_t s : sizes) vertex_count *= s;

  const auto coords_of = [&](std::size_t v) {
    std::vector<std::size_t> x(dims);
    for (int i = dims - 1; i >= 0; --i) {
      x[i] = v % sizes[i];
      v /= sizes[i];
    }
    return x;
  };
  const auto id_of = [&](const std::vector<std::size_t>& x) {
    std::size_t v = 0;
    for (int i = 0; i < dims; ++i) v = v * sizes[i] + x[i];
    return v;
  };
  const auto move = [&](std::size_t v, int dim, bool up) {
    std::vector<std::size_t> x = coords_of(v);
    const int next = (dim + 1) % dims;
    if (up) {
      if (x[dim] + 1 == sizes[dim]) {
        x[dim] = 0;
        x[next] = (x[next] + twists[dim]) % sizes[next];
      } else {
        ++x[dim];
      }
    } else {
      if (x[dim] == 0) {
        x[dim] = sizes[dim] - 1;
        x[next] = (x[next] + sizes[next] - twists[dim] % sizes[next]) % sizes[next];
      } else {
        --x[dim];
      }
    }
    return id_of(x);
  };

  std::set<std::pair<int, int>> edge_set;
  std::vector<std::vector<int>> nbrs(vertex_count);
  for (std::size_t v = 0; v < vertex_count; ++v) {
    for (int i = 0; i < dims; ++i) {
      const std::size_t up = move(v, i, true);
      const std::size_t down = move(v, i, false);
      nbrs[v].push_back(static_cast<int>(down));  // subnode 2i
      nbrs[v].push_back(static_cast<int>(up));    // subnode 2i+1
      edge_set.insert({static_cast<int>(std::min(v, up)),
                       static_cast<int>(std::max(v, up))});
      edge_set.insert({static_cast<int>(std::min(v, down)),
                       static_cast<int>(std::max(v, down))});
    }
  }
  inst.graph = Graph(static_cast<int>(vertex_count),
                     {edge_set.begin(), edge_set.end()});
  inst.arcs = make_arc_space(nbrs);

  inst.shift.assign(inst.arcs.arc_count(), -1);
  for (std::size_t v = 0; v < vertex_count; ++v)
    for (int i = 0; i < dims; ++i) {
      const int vi = static_cast<int>(v);
      inst.shift[inst.arcs.index(vi, 2 * i)] =
          inst.arcs.index(static_cast<int>(move(v, i, false)), 2 * i);
      inst.shift[inst.arcs.index(vi, 2 * i + 1)] =
          inst.arcs.index(static_cast<int>(move(v, i, true)), 2 * i + 1);
    }

  if (coin == FamilyCoin::Grover) {
    inst.coin_blocks.assign(vertex_count,
                            payload::grover(static_cast<std::size_t>(directions)));
  } else {
    inst.coin_blocks = hadamard_product_blocks(inst.arcs);
  }

  std::vector<std::size_t> labels(inst.arcs.arc_count());
  std::vector<int> vertices(inst.arcs.arc_count());
  for (std::size_t v = 0; v < vertex_count; ++v)
    for (int a = 0; a < directions; ++a) {
      const int idx = inst.arcs.index(static_cast<int>(v), a);
      labels[idx] = v * coin_span + static_cast<std::size_t>(a);
      vertices[idx] = static_cast<int>(v);
    }
  inst.encoding = Encoding(inst.circuit.reg, node_wires, coin_wires, {},
                           std::move(labels), std::move(vertices),
                           static_cast<int>(vertex_count));

  std::size_t shift_gates = 0;
  for (int i = 0; i < dims; ++i) {
    shift_gates += 2 * static_cast<std::size_t>(exps[i]);
    if (twists[i] > 0)
      for (int m = 0; m < exps[(i + 1) % dims]; ++m)
        if ((twists[i] >> m) & 1u)
          shift_gates += 2 * static_cast<std::size_t>(exps[(i + 1) % dims] - m);
  }

  std::vector<std::size_t> size_list(sizes.begin(), sizes.end());
  inst.circuit.meta = {{"family", family},
                       {"sizes", size_list},
                       {"twists", twists},
                       {"coin", family_coin_name(coin)},
                       {"qubits", node_count + coin_count},
                       {"coin_gates", coin_gates},
                       {"empty_coin_labels", coin_span - static_cast<std::size_t>(directions)},
                       {"gate_formula", coin_gates + shift_gates},
                       {"vertex_count", vertex_count}};
  return inst;
}

}  // namespace detail

// Walk along a torus of dimensions 2^exps[0] x 2^exps[1] x ...; the coin
// register selects (dimension, direction).
inline FamilyInstance build_torus_grid(const std::vector<int>& exps,
                                       FamilyCoin coin = FamilyCoin::Grover) {
  return detail::build_torus_impl(
      exps, std::vector<std::size_t>(exps.size(), 0), coin, "torus");
}

// Twisted torus: wrapping coordinate i in the + direction adds twists[i] to
// coordinate i+1 (cyclically). Zero twists reduce exactly to the plain torus.
inline FamilyInstance build_twisted_torus(const std::vector<std::size_t>& sizes,
                                          const std::vector<std::size_t>& twists,
                                          FamilyCoin coin = FamilyCoin::Grover) {
  std::vector<int> exps;
  exps.reserve(sizes.size());
  for (std::size_t s : sizes) {
    if (!is_power_of(s, 2))
      throw DomainError("twisted torus sizes must be powers of 2");
    exps.push_back(ceil_log2(s));
  }
  return detail::build_torus_impl(exps, twists, coin, "twisted-torus");
}

// ---------------------------------------------------------------------------
// Complete graphs

// Complete 2^n graph with a self-loop at every vertex. Subnode a of node v
// points at node a; the flip-flop shift is a wire-wise swap of the node and
// coin registers (3n CNOTs).
inline FamilyInstance build_complete_selfloops(int n,
                                               FamilyCoin coin = FamilyCoin::Hadamard) {
  if (n < 1) throw DomainError("complete graph exponent must be >= 1");
  const std::size_t size = std::size_t{1} << n;

  FamilyInstance inst;
  inst.circuit = Circuit(Register::qubits(2 * n));
  std::vector<int> node(n), coin_wires(n);
  for (int i = 0; i < n; ++i) {
    node[i] = i;
    coin_wires[i] = n + i;
  }

  std::size_t coin_gates = 0;
  if (coin == FamilyCoin::Hadamard) {
    for (int w : coin_wires) inst.circuit.add(gates::h(w));
    coin_gates = static_cast<std::size_t>(n);
  } else if (coin == FamilyCoin::Grover) {
    detail::add_grover_reflection(inst.circuit, coin_wires);
    coin_gates = detail::grover_reflection_gates(n);
  } else {
    throw DomainError("complete graph supports hadamard or grover coins");
  }

  for (int i = 0; i < n; ++i) {
    inst.circuit.add(gates::cnot(node[i], coin_wires[i]));
    inst.circuit.add(gates::cnot(coin_wires[i], node[i]));
    inst.circuit.add(gates::cnot(node[i], coin_wires[i]));
  }

  inst.graph = complete_graph_selfloops(static_cast<int>(size));
  inst.arcs = build_arc_space(inst.graph);  // subnode a -> neighbor a
  inst.shift = flip_flop_shift(inst.arcs);
  inst.coin_blocks = coin == FamilyCoin::Hadamard ? hadamard_product_blocks(inst.arcs)
                                                  : grover_blocks(inst.arcs);
  inst.encoding =
      detail::product_encoding(inst.circuit.reg, node, coin_wires, inst.arcs, size);

  inst.circuit.meta = {{"family", "complete"},
                       {"size", size},
                       {"coin", family_coin_name(coin)},
                       {"qubits", 2 * n},
                       {"coin_gates", coin_gates},
                       {"gate_formula", coin_gates + 3 * static_cast<std::size_t>(n)},
                       {"vertex_count", size}};
  return inst;
}

// Complete bipartite graph between odd and even labels of 0..2^n-1 (degree
// 2^{n-1}). The shift swaps the residue wires with the coin wires and flips
// the parity wire; the coin is n-1 Hadamards.
inline FamilyInstance build_complete_bipartite(int n) {
  if (n < 2) throw DomainError("bipartite graph exponent must be >= 2");
  const std::size_t size = std::size_t{1} << n;
  const std::size_t degree = size / 2;

  FamilyInstance inst;
  inst.circuit = Circuit(Register::qubits(2 * n - 1));
  std::vector<int> node(n), residue(n - 1), coin_wires(n - 1);
  for (int i = 0; i < n; ++i) node[i] = i;
  for (int i = 0; i < n - 1; ++i) {
    residue[i] = i;
    coin_wires[i] = n + i;
  }
  const int parity_wire = n - 1;

  for (int w : coin_wires) inst.circuit.add(gates::h(w));
  for (int i = 0; i < n - 1; ++i) {
    inst.circuit.add(gates::cnot(residue[i], coin_wires[i]));
    inst.circuit.add(gates::cnot(coin_wires[i], residue[i]));
    inst.circuit.add(gates::cnot(residue[i], coin_wires[i]));
  }
  inst.circuit.add(gates::x(parity_wire));

  inst.graph = complete_bipartite_parity(static_cast<int>(size));
  inst.arcs = build_arc_space(inst.graph);  // subnode a of (r,p) -> (a, 1-p)
  inst.shift = flip_flop_shift(inst.arcs);
  inst.coin_blocks = hadamard_product_blocks(inst.arcs);
  inst.encoding =
      detail::product_encoding(inst.circuit.reg, node, coin_wires, inst.arcs, degree);

  inst.circuit.meta = {{"family", "bipartite"},
                       {"size", size},
                       {"coin", "hadamard"},
                       {"qubits", 2 * n - 1},
                       {"coin_gates", n - 1},
                       {"gate_formula", 4 * n - 3},
                       {"vertex_count", size}};
  return inst;
}

// ---------------------------------------------------------------------------
// Glued binary trees

// Two depth-l binary trees glued leaf-to-leaf by the regular cyclic pattern
// (left leaf i joins right leaves i and i+1 mod 2^l). Grover coin everywhere:
// G_2 at the two roots, G_3 elsewhere. Flip-flop shift.
//
// Encoding: a column register holding the GRAY CODE of the column (0..2l+1),
// a row register holding the within-level index left-aligned (descending one
// level appends one branch bit), and two coin wires: coin 0 points toward the
// nearer root, coins 1 and 2 point away. Gray-coded columns make each level
// transition flip a single column wire, which keeps the gate count linear
// in l.
inline FamilyInstance build_glued_tree(int l) {
  if (l < 2) throw DomainError("glued tree depth must be >= 2");
  const int columns = 2 * l + 2;
  const int colw = ceil_log2(static_cast<std::size_t>(columns));
  const std::size_t leaves = std::size_t{1} << l;

  FamilyInstance inst;
  inst.circuit = Circuit(Register::qubits(colw + l + 2));
  std::vector<int> col_wires(colw), row_wires(l);
  for (int i = 0; i < colw; ++i) col_wires[i] = i;
  for (int i = 0; i < l; ++i) row_wires[i] = colw + i;
  const int ch = colw + l;      // coin high wire
  const int cl = colw + l + 1;  // coin low wire

  // tree level of a column (distance from its root)
  const auto level = [&](int c) { return std::min(c, 2 * l + 1 - c); };

  // --- vertices -----------------------------------------------------------
  std::vector<int> offset(columns + 1, 0);
  for (int c = 0; c < columns; ++c)
    offset[c + 1] = offset[c] + (1 << level(c));
  const int vertex_count = offset[columns];
  const auto id_of = [&](int c, std::size_t r) {
    return offset[c] + static_cast<int>(r);
  };

  // --- neighbors, subnode order: [toward root, away0, away1] ---------------
  std::vector<std::vector<int>> nbrs(vertex_count);
  for (int c = 0; c < columns; ++c) {
    const int lev = level(c);
    const bool left = c <= l;
    for (std::size_t r = 0; r < (std::size_t{1} << lev); ++r) {
      std::vector<int>& out = nbrs[id_of(c, r)];
      if (lev > 0) out.push_back(id_of(left ? c - 1 : c + 1, r / 2));
      if (c == l) {  // left leaves: glue edges
        out.push_back(id_of(l + 1, r));
        out.push_back(id_of(l + 1, (r + 1) % leaves));
      } else if (c == l + 1) {  // right leaves: glue edges
        out.push_back(id_of(l, r));
        out.push_back(id_of(l, (r + leaves - 1) % leaves));
      } else {  // children one level further from the root
        out.push_back(id_of(left ? c + 1 : c - 1, 2 * r));
        out.push_back(id_of(left ? c + 1 : c - 1, 2 * r + 1));
      }
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < vertex_count; ++v)
    for (int u : nbrs[v])
      if (v < u) edges.push_back({v, u});
  inst.graph = Graph(vertex_count, std::move(edges));
  inst.arcs = make_arc_space(nbrs);
  inst.shift = flip_flop_shift(inst.arcs);
  inst.coin_blocks = grover_blocks(inst.arcs);  // G_2 at roots, G_3 elsewhere

  // --- encoding -------------------------------------------------------------
  std::vector<std::size_t> labels(inst.arcs.arc_count());
  std::vector<int> vertices(inst.arcs.arc_count());
  for (int c = 0; c < columns; ++c) {
    const int lev = level(c);
    for (std::size_t r = 0; r < (std::size_t{1} << lev); ++r) {
      const int v = id_of(c, r);
      const std::size_t base =
          ((gray_code(static_cast<std::size_t>(c)) << l) | (r << (l - lev))) << 2;
      for (int j = 0; j < inst.arcs.degree(v); ++j) {
        const int coin_label = lev == 0 ? j + 1 : j;  // roots use coins 1,2
        labels[inst.arcs.index(v, j)] = base + static_cast<std::size_t>(coin_label);
        vertices[inst.arcs.index(v, j)] = v;
      }
    }
  }
  std::vector<int> node_wires = col_wires;
  node_wires.insert(node_wires.end(), row_wires.begin(), row_wires.end());
  inst.encoding = Encoding(inst.circuit.reg, node_wires, {ch, cl}, {},
                           std::move(labels), std::move(vertices), vertex_count);

  // --- coin: G_3 on coin labels {0,1,2}, fixed up to G_2 at the two roots ---
  Matrix g3i = Matrix::identity(4);
  {
    const Matrix g3 = payload::grover(3);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) g3i.at(r, c) = g3.at(r, c);
  }
  Matrix root_swap(4);  // the root coin block: G_2 on coin labels {1,2}
  root_swap.at(0, 0) = 1.0;
  root_swap.at(1, 2) = 1.0;
  root_swap.at(2, 1) = 1.0;
  root_swap.at(3, 3) = 1.0;
  const Matrix root_fix = root_swap * g3i;  // (G3+I) is an involution

  inst.circuit.add(gates::custom("g3_coin", g3i, {ch, cl}));
  inst.circuit.add(gates::custom(
      "root_coin_fix", root_fix, {ch, cl},
      detail::pattern_controls(col_wires, gray_code(0))));
  inst.circuit.add(gates::custom(
      "root_coin_fix", root_fix, {ch, cl},
      detail::pattern_controls(col_wires, gray_code(static_cast<std::size_t>(2 * l + 1)))));

  // --- shift ----------------------------------------------------------------
  // One column-wire flip per level transition thanks to the gray code.
  const auto gray_diff = [&](int ca, int cb) {
    const std::size_t ga = gray_code(static_cast<std::size_t>(ca));
    const std::size_t gb = gray_code(static_cast<std::size_t>(cb));
    const int bit = ceil_log2((ga ^ gb) + 1) - 1;  // single differing bit
    const int wire = col_wires[colw - 1 - bit];
    std::vector<Control> shared;
    for (int i = 0; i < colw; ++i) {
      if (col_wires[i] == wire) continue;
      shared.push_back({col_wires[i], static_cast<int>((ga >> (colw - 1 - i)) & 1u)});
    }
    const int bit_a = static_cast<int>((ga >> bit) & 1u);
    return std::tuple<int, int, int, std::vector<Control>>(wire, bit_a, 1 - bit_a,
                                                           shared);
  };

  // tree levels: |col, R_c..=0, coin 1+b>  <->  |col', R_c=b, coin 0>
  const auto add_level = [&](int col_a, int col_b, int lev) {
    const auto [wire, bit_a, bit_b, shared] = gray_diff(col_a, col_b);
    const int rc = row_wires[lev];
    {  // b = 0: row bit stays 0
      std::vector<Control> guards = shared;
      guards.push_back({ch, 0});
      guards.push_back({rc, 0});
      synth::add_masked_transposition(
          inst.circuit, {{wire, bit_a, bit_b}, {cl, 1, 0}}, guards);
    }
    {  // b = 1: row bit set on the way down
      std::vector<Control> guards = shared;
      guards.push_back({cl, 0});
      synth::add_masked_transposition(
          inst.circuit, {{wire, bit_a, bit_b}, {rc, 0, 1}, {ch, 1, 0}}, guards);
    }
  };
  for (int c = 0; c < l; ++c) add_level(c, c + 1, c);                  // left tree
  for (int c = 0; c < l; ++c) add_level(2 * l + 1 - c, 2 * l - c, c);  // right tree

  // glue, coin 1: |l, i, 1> <-> |l+1, i, 1>
  {
    const auto [wire, bit_a, bit_b, shared] = gray_diff(l, l + 1);
    std::vector<Control> guards = shared;
    guards.push_back({ch, 0});
    guards.push_back({cl, 1});
    synth::add_masked_transposition(inst.circuit, {{wire, bit_a, bit_b}}, guards);
  }
  // glue, coin 2: |l, i, 2> <-> |l+1, i+1 mod 2^l, 2>
  {
    const auto [wire, bit_a, bit_b, shared] = gray_diff(l, l + 1);
    std::vector<Control> coin2 = {{ch, 1}, {cl, 0}};
    std::vector<Control> at_left = detail::pattern_controls(
        col_wires, gray_code(static_cast<std::size_t>(l)));
    at_left.insert(at_left.end(), coin2.begin(), coin2.end());

    synth::add_increment(inst.circuit, row_wires, true, at_left);
    std::vector<Control> flip_ctl = shared;
    flip_ctl.insert(flip_ctl.end(), coin2.begin(), coin2.end());
    inst.circuit.add(gates::x(wire, flip_ctl));
    synth::add_increment(inst.circuit, row_wires, false, at_left);
  }

  inst.circuit.meta = {{"family", "glued-tree"},
                       {"depth", l},
                       {"coin", "grover"},
                       {"qubits", colw + l + 2},
                       {"coin_gates", 3},
                       {"gate_formula", 18 * l + 5},
                       {"vertex_count", vertex_count}};
  return inst;
}

// ---------------------------------------------------------------------------
// Complete 3^n graph on qutrits

// Complete 3^n graph with self-loops on n node + n coin qutrits. The shift is
// a wire-wise qutrit swap; the T coin is fully separable, the Grover coin is
// a T-conjugated reflection with one multi-controlled phase gate.
inline FamilyInstance build_complete_qutrit(int n, FamilyCoin coin = FamilyCoin::T) {
  if (n < 1) throw DomainError("qutrit complete graph exponent must be >= 1");
  std::size_t size = 1;
  for (int i = 0; i < n; ++i) size *= 3;

  FamilyInstance inst;
  inst.circuit = Circuit(Register::qutrits(2 * n));
  std::vector<int> node(n), coin_wires(n);
  for (int i = 0; i < n; ++i) {
    node[i] = i;
    coin_wires[i] = n + i;
  }

  std::size_t coin_gates = 0;
  if (coin == FamilyCoin::T) {
    for (int w : coin_wires) inst.circuit.add(gates::qutrit_t(+1, w));
    coin_gates = static_cast<std::size_t>(n);
  } else if (coin == FamilyCoin::Grover) {
    // G = T_n (2|0..0><0..0| - I) T_n^dag, the -1 folded into one T payload
    for (int w : coin_wires) inst.circuit.add(gates::qutrit_t(-1, w));
    std::vector<Control> ctl;
    for (int i = 0; i + 1 < n; ++i) ctl.push_back({coin_wires[i], 0});
    Matrix q(3);  // phase -1 on digit 0
    q.at(0, 0) = -1.0;
    q.at(1, 1) = 1.0;
    q.at(2, 2) = 1.0;
    inst.circuit.add(gates::custom("qutrit_ref0", q, {coin_wires.back()}, ctl));
    for (int i = 1; i < n; ++i) inst.circuit.add(gates::qutrit_t(+1, coin_wires[i]));
    inst.circuit.add(gates::custom(
        "neg_qutrit_t", payload::qutrit_t(+1) * cplx{-1.0, 0.0}, {coin_wires[0]}));
    coin_gates = static_cast<std::size_t>(2 * n + 1);
  } else {
    throw DomainError("qutrit complete graph supports t or grover coins");
  }

  for (int i = 0; i < n; ++i)
    inst.circuit.add(
        gates::custom("qutrit_swap", payload::swap2(3), {node[i], coin_wires[i]}));

  inst.graph = complete_graph_selfloops(static_cast<int>(size));
  inst.arcs = build_arc_space(inst.graph);
  inst.shift = flip_flop_shift(inst.arcs);
  inst.coin_blocks =
      coin == FamilyCoin::T ? t_product_blocks(inst.arcs, +1) : grover_blocks(inst.arcs);
  inst.encoding =
      detail::product_encoding(inst.circuit.reg, node, coin_wires, inst.arcs, size);

  inst.circuit.meta = {{"family", "qutrit-complete"},
                       {"size", size},
                       {"coin", family_coin_name(coin)},
                       {"qutrits", 2 * n},
                       {"qubits", 2 * n},
                       {"coin_gates", coin_gates},
                       {"gate_formula", coin_gates + static_cast<std::size_t>(n)},
                       {"vertex_count", size}};
  return inst;
}

// ---------------------------------------------------------------------------
// Family dispatch (the JSON payload of the CLI build command)

struct FamilySpec {
  std::string family;
  nlohmann::json params = nlohmann::json::object();
};

inline FamilyInstance build_family(const FamilySpec& spec) {
  const auto& p = spec.params;
  const auto coin_or = [&](FamilyCoin dflt) {
    return p.contains("coin") ? parse_family_coin(p.at("coin").get<std::string>())
                              : dflt;
  };
  if (spec.family == "cycle") {
    const auto size = p.at("size").get<long long>();
    if (size < 2) throw DomainError("cycle needs size >= 2");
    return build_cycle(static_cast<std::size_t>(size), coin_or(FamilyCoin::Hadamard));
  }
  if (spec.family == "torus") {
    std::vector<int> exps;
    for (const auto& s : p.at("dims")) {
      const auto size = s.get<long long>();
      if (size < 2 || !is_power_of(static_cast<std::size_t>(size), 2))
        throw DomainError("torus dimensions must be powers of 2, got " +
                          std::to_string(size));
      exps.push_back(ceil_log2(static_cast<std::size_t>(size)));
    }
    return build_torus_grid(exps, coin_or(FamilyCoin::Grover));
  }
  if (spec.family == "twisted-torus") {
    std::vector<std::size_t> sizes, twists;
    for (const auto& s : p.at("sizes")) sizes.push_back(s.get<std::size_t>());
    if (p.contains("twists"))
      for (const auto& t : p.at("twists")) twists.push_back(t.get<std::size_t>());
    else
      twists.assign(sizes.size(), 0);
    return build_twisted_torus(sizes, twists, coin_or(FamilyCoin::Grover));
  }
  if (spec.family == "complete") {
    return build_complete_selfloops(p.at("size_exp").get<int>(),
                                    coin_or(FamilyCoin::Hadamard));
  }
  if (spec.family == "bipartite") {
    return build_complete_bipartite(p.at("size_exp").get<int>());
  }
  if (spec.family == "glued-tree") {
    return build_glued_tree(p.at("depth").get<int>());
  }
  if (spec.family == "qutrit-complete") {
    return build_complete_qutrit(p.at("size_exp").get<int>(), coin_or(FamilyCoin::T));
  }
  throw DomainError("unknown family \"" + spec.family + "\"");
}

}  // namespace qwalk
