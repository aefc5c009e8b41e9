#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "gate.hpp"
#include "graph.hpp"

namespace qwalk {

// Extended position space: vertex v of degree d contributes arcs
// (v, 0) .. (v, d-1), subnode a pointing at one incident neighbor. Arcs are
// stored grouped by vertex.
struct ArcSpace {
  int vertex_count = 0;
  std::vector<int> first;      // per-vertex offset, size vertex_count + 1
  std::vector<int> neighbor;   // per arc
  std::vector<int> vertex_of;  // per arc

  int arc_count() const { return static_cast<int>(neighbor.size()); }
  int degree(int v) const { return first[v + 1] - first[v]; }
  int index(int v, int sub) const { return first[v] + sub; }
};

inline ArcSpace make_arc_space(const std::vector<std::vector<int>>& nbrs) {
  ArcSpace as;
  as.vertex_count = static_cast<int>(nbrs.size());
  as.first.assign(as.vertex_count + 1, 0);
  for (int v = 0; v < as.vertex_count; ++v) {
    if (nbrs[v].empty())
      throw DomainError("vertex " + std::to_string(v) + " has no subnodes");
    as.first[v + 1] = as.first[v] + static_cast<int>(nbrs[v].size());
  }
  as.neighbor.reserve(as.first.back());
  as.vertex_of.reserve(as.first.back());
  for (int v = 0; v < as.vertex_count; ++v)
    for (int u : nbrs[v]) {
      as.neighbor.push_back(u);
      as.vertex_of.push_back(v);
    }
  return as;
}

// Default subnode ordering: subnode a of v points at the a-th neighbor in
// ascending vertex order; a self-loop occupies one slot.
inline ArcSpace build_arc_space(const Graph& g) {
  g.require_no_isolated();
  std::vector<std::vector<int>> nbrs(g.n);
  for (int v = 0; v < g.n; ++v) nbrs[v] = g.neighbors(v);
  return make_arc_space(nbrs);
}

// Flip-flop pairing: the arc at v toward u maps to the arc at u toward v, so
// S^2 = I. A self-loop arc is a fixed point. Requires back-arcs to be unique.
inline std::vector<int> flip_flop_shift(const ArcSpace& as) {
  std::vector<int> perm(as.arc_count(), -1);
  for (int i = 0; i < as.arc_count(); ++i) {
    const int v = as.vertex_of[i];
    const int u = as.neighbor[i];
    if (u == v) {
      perm[i] = i;
      continue;
    }
    int back = -1;
    for (int j = as.first[u]; j < as.first[u + 1]; ++j) {
      if (as.neighbor[j] == v) {
        if (back >= 0)
          throw DomainError("flip-flop shift is ambiguous: parallel arcs between " +
                            std::to_string(v) + " and " + std::to_string(u));
        back = j;
      }
    }
    if (back < 0)
      throw DomainError("no back-arc from " + std::to_string(u) + " to " +
                        std::to_string(v));
    perm[i] = back;
  }
  return perm;
}

// Canonical cycle arc space on N vertices: subnode 0 points at v-1, subnode 1
// at v+1 (indices mod N). Valid for N = 2 as well, where the two slots share
// the same neighbor (the doubled edge of a 2-cycle).
inline ArcSpace cycle_arc_space(int n) {
  if (n < 2) throw DomainError("cycle arc space needs N >= 2");
  std::vector<std::vector<int>> nbrs(n);
  for (int v = 0; v < n; ++v) nbrs[v] = {(v - 1 + n) % n, (v + 1) % n};
  return make_arc_space(nbrs);
}

// Directed cycle shift: coin 1 advances along the cycle, coin 0 retreats.
inline std::vector<int> cycle_directed_shift(const ArcSpace& as) {
  const int n = as.vertex_count;
  for (int v = 0; v < n; ++v) {
    if (as.degree(v) != 2 || as.neighbor[as.index(v, 0)] != (v - 1 + n) % n ||
        as.neighbor[as.index(v, 1)] != (v + 1) % n)
      throw DomainError("cycle-directed shift requires the canonical cycle arc space");
  }
  std::vector<int> perm(as.arc_count());
  for (int v = 0; v < n; ++v) {
    perm[as.index(v, 0)] = as.index((v - 1 + n) % n, 0);
    perm[as.index(v, 1)] = as.index((v + 1) % n, 1);
  }
  return perm;
}

enum class CoinKind { HadamardProduct, Grover, TProduct, Custom };

inline std::vector<Matrix> grover_blocks(const ArcSpace& as) {
  std::vector<Matrix> blocks;
  blocks.reserve(as.vertex_count);
  for (int v = 0; v < as.vertex_count; ++v)
    blocks.push_back(payload::grover(static_cast<std::size_t>(as.degree(v))));
  return blocks;
}

inline std::vector<Matrix> hadamard_product_blocks(const ArcSpace& as) {
  std::vector<Matrix> blocks;
  blocks.reserve(as.vertex_count);
  for (int v = 0; v < as.vertex_count; ++v) {
    const int d = as.degree(v);
    if (!is_power_of(static_cast<std::size_t>(d), 2))
      throw DomainError("Hadamard-product coin needs power-of-2 degree, vertex " +
                        std::to_string(v) + " has degree " + std::to_string(d));
    Matrix b = Matrix::identity(1);
    for (int q = d; q > 1; q /= 2) b = Matrix::kron(b, payload::h());
    blocks.push_back(std::move(b));
  }
  return blocks;
}

inline std::vector<Matrix> t_product_blocks(const ArcSpace& as, int sign = +1) {
  std::vector<Matrix> blocks;
  blocks.reserve(as.vertex_count);
  for (int v = 0; v < as.vertex_count; ++v) {
    const int d = as.degree(v);
    if (!is_power_of(static_cast<std::size_t>(d), 3))
      throw DomainError("T-product coin needs power-of-3 degree, vertex " +
                        std::to_string(v) + " has degree " + std::to_string(d));
    Matrix b = Matrix::identity(1);
    for (int q = d; q > 1; q /= 3) b = Matrix::kron(b, payload::qutrit_t(sign));
    blocks.push_back(std::move(b));
  }
  return blocks;
}

inline std::vector<Matrix> build_coin(const ArcSpace& as, CoinKind kind) {
  switch (kind) {
    case CoinKind::HadamardProduct: return hadamard_product_blocks(as);
    case CoinKind::Grover: return grover_blocks(as);
    case CoinKind::TProduct: return t_product_blocks(as);
    case CoinKind::Custom:
      throw DomainError("custom coin needs explicit per-vertex blocks");
  }
  throw DomainError("unknown coin kind");
}

// The walk step U = S C on the arc space: S a permutation of arcs, C one
// unitary block per vertex.
struct WalkOperator {
  ArcSpace arcs;
  std::vector<int> shift;          // arc permutation
  std::vector<Matrix> coin_blocks; // per vertex

  WalkOperator() = default;
  WalkOperator(ArcSpace as, std::vector<int> s, std::vector<Matrix> blocks)
      : arcs(std::move(as)), shift(std::move(s)), coin_blocks(std::move(blocks)) {
    if (static_cast<int>(shift.size()) != arcs.arc_count())
      throw DomainError("shift permutation size mismatch");
    std::vector<char> seen(shift.size(), 0);
    for (int i = 0; i < static_cast<int>(shift.size()); ++i) {
      const int j = shift[i];
      if (j < 0 || j >= static_cast<int>(shift.size()) || seen[j])
        throw DomainError("shift is not a permutation");
      seen[j] = 1;
    }
    if (static_cast<int>(coin_blocks.size()) != arcs.vertex_count)
      throw DomainError("coin block count mismatch");
    for (int v = 0; v < arcs.vertex_count; ++v) {
      if (coin_blocks[v].n != static_cast<std::size_t>(arcs.degree(v)))
        throw DomainError("coin block at vertex " + std::to_string(v) +
                          " does not match its degree");
      if (!coin_blocks[v].is_unitary(kAlgebraTol))
        throw DomainError("coin block at vertex " + std::to_string(v) +
                          " is not unitary");
    }
  }

  int dim() const { return arcs.arc_count(); }

  // One step applied to arc amplitudes: coin first, then shift.
  std::vector<cplx> step(const std::vector<cplx>& in) const {
    if (static_cast<int>(in.size()) != dim())
      throw DomainError("walk step: amplitude size mismatch");
    std::vector<cplx> mixed(in.size(), cplx{0.0, 0.0});
    for (int v = 0; v < arcs.vertex_count; ++v) {
      const Matrix& b = coin_blocks[v];
      const int base = arcs.first[v];
      for (std::size_t r = 0; r < b.n; ++r) {
        cplx acc{0.0, 0.0};
        for (std::size_t c = 0; c < b.n; ++c) acc += b.at(r, c) * in[base + c];
        mixed[base + r] = acc;
      }
    }
    std::vector<cplx> out(in.size());
    for (int i = 0; i < dim(); ++i) out[shift[i]] = mixed[i];
    return out;
  }

  Matrix coin_matrix() const {
    check_cap();
    Matrix c(static_cast<std::size_t>(dim()));
    for (int v = 0; v < arcs.vertex_count; ++v) {
      const int base = arcs.first[v];
      for (std::size_t r = 0; r < coin_blocks[v].n; ++r)
        for (std::size_t col = 0; col < coin_blocks[v].n; ++col)
          c.at(base + r, base + col) = coin_blocks[v].at(r, col);
    }
    return c;
  }

  Matrix shift_matrix() const {
    check_cap();
    Matrix s(static_cast<std::size_t>(dim()));
    for (int i = 0; i < dim(); ++i) s.at(shift[i], i) = 1.0;
    return s;
  }

  Matrix unitary() const {
    check_cap();
    Matrix c = coin_matrix();
    Matrix u(c.n);
    for (std::size_t col = 0; col < c.n; ++col)
      for (std::size_t r = 0; r < c.n; ++r)
        u.at(shift[r], col) = c.at(r, col);
    return u;
  }

 private:
  void check_cap() const {
    if (static_cast<std::size_t>(dim()) >= kMaxUnitaryDim)
      throw CapError("arc space dimension " + std::to_string(dim()) +
                     " is too large to materialize (cap 2^13)");
  }
};

enum class ShiftMode { FlipFlop, CycleDirected };

inline WalkOperator walk_unitary(const Graph& g, CoinKind coin, ShiftMode mode) {
  if (mode == ShiftMode::CycleDirected) {
    const ArcSpace as = cycle_arc_space(g.n);
    return WalkOperator(as, cycle_directed_shift(as), build_coin(as, coin));
  }
  const ArcSpace as = build_arc_space(g);
  return WalkOperator(as, flip_flop_shift(as), build_coin(as, coin));
}

// Reference evolution by repeated application of U = SC. Returns the
// per-vertex distribution after each of steps 0..steps.
inline std::vector<std::vector<double>> simulate_walk(const WalkOperator& op,
                                                      std::vector<cplx> amplitudes,
                                                      std::size_t steps) {
  if (static_cast<int>(amplitudes.size()) != op.dim())
    throw DomainError("simulate_walk: amplitude size mismatch");
  double n2 = 0.0;
  for (const cplx& a : amplitudes) n2 += std::norm(a);
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-9)
    throw DomainError("simulate_walk: initial amplitudes are not normalized");

  const auto distribution = [&op](const std::vector<cplx>& amp) {
    std::vector<double> d(op.arcs.vertex_count, 0.0);
    for (int i = 0; i < op.dim(); ++i) d[op.arcs.vertex_of[i]] += std::norm(amp[i]);
    return d;
  };

  std::vector<std::vector<double>> out;
  out.reserve(steps + 1);
  out.push_back(distribution(amplitudes));
  for (std::size_t s = 0; s < steps; ++s) {
    amplitudes = op.step(amplitudes);
    out.push_back(distribution(amplitudes));
  }
  return out;
}

}  // namespace qwalk
