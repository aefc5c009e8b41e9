#pragma once

// Test-side oracles and generators. Everything here recomputes expectations
// through routes independent of the library's fast paths.

#include <random>
#include <vector>

#include "qwalk/qwalk.hpp"

namespace testutil {

using qwalk::cplx;

inline std::mt19937& rng() {
  static std::mt19937 engine(0x5eed1234);
  return engine;
}

inline std::vector<cplx> random_amplitudes(std::size_t dim, std::mt19937& engine) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> amp(dim);
  double n2 = 0.0;
  for (auto& a : amp) {
    a = cplx{gauss(engine), gauss(engine)};
    n2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& a : amp) a *= inv;
  return amp;
}

inline qwalk::StateVector random_state(const qwalk::Register& reg, std::mt19937& engine) {
  qwalk::StateVector st(reg);
  st.amp = random_amplitudes(reg.dim(), engine);
  return st;
}

// Brute-force route: the gate's full dim x dim matrix, built label by label
// from digit vectors. Nothing is shared with apply_gate's stride walk.
inline qwalk::Matrix dense_gate_matrix(const qwalk::Register& reg, const qwalk::Gate& g) {
  const std::size_t dim = reg.dim();
  qwalk::Matrix m(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    const std::vector<int> din = reg.digits_of(j);
    bool match = true;
    for (const auto& c : g.controls)
      if (din[c.wire] != c.value) match = false;
    if (!match) {
      m.at(j, j) = 1.0;
      continue;
    }
    std::size_t col = 0;
    for (int t : g.targets) col = col * reg.radices[t] + din[t];
    for (std::size_t row = 0; row < g.payload.n; ++row) {
      std::vector<int> dout = din;
      std::size_t rest = row;
      for (int i = static_cast<int>(g.targets.size()) - 1; i >= 0; --i) {
        dout[g.targets[i]] = static_cast<int>(rest % reg.radices[g.targets[i]]);
        rest /= reg.radices[g.targets[i]];
      }
      m.at(reg.index_of(dout), j) += g.payload.at(row, col);
    }
  }
  return m;
}

// Classical route for permutation circuits: push one basis label through the
// gate list, flipping target bits when controls match. Only valid for
// X-payload gates.
inline std::size_t track_label(const qwalk::Circuit& circ, std::size_t label) {
  for (const auto& g : circ.gates) {
    if (g.kind != qwalk::GateKind::X)
      throw std::runtime_error("track_label needs an X-only circuit");
    bool match = true;
    for (const auto& c : g.controls)
      if (circ.reg.digit_at(label, c.wire) != c.value) match = false;
    if (match) label ^= circ.reg.stride(g.targets[0]);
  }
  return label;
}

// Random graph with no isolated vertices; optional self-loops.
inline qwalk::Graph random_graph(int n, std::mt19937& engine, double edge_p = 0.4,
                                 double loop_p = 0.2) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::pair<int, int>> edges;
  std::vector<int> loops;
  std::vector<int> degree(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (coin(engine) < edge_p) {
        edges.push_back({a, b});
        ++degree[a];
        ++degree[b];
      }
  for (int v = 0; v < n; ++v)
    if (coin(engine) < loop_p) {
      loops.push_back(v);
      ++degree[v];
    }
  for (int v = 0; v < n; ++v)
    if (degree[v] == 0) {
      const int u = (v + 1) % n;
      if (u == v)
        loops.push_back(v);
      else {
        edges.push_back({std::min(u, v), std::max(u, v)});
        ++degree[u];
      }
      ++degree[v];
    }
  return qwalk::Graph(n, std::move(edges), std::move(loops));
}

// Every valid basis input must come back with ancillas at 0 and without
// leaking amplitude off the encoded subspace.
inline bool ancillas_restored(const qwalk::FamilyInstance& inst, double tol = 1e-12) {
  for (int a = 0; a < inst.encoding.arc_count(); ++a) {
    const qwalk::StateVector out = qwalk::run(
        inst.circuit,
        qwalk::new_basis_state(inst.circuit.reg, inst.encoding.label_of(a)), 1);
    for (std::size_t i = 0; i < out.amp.size(); ++i) {
      if (std::norm(out.amp[i]) <= tol) continue;
      for (int w : inst.circuit.ancilla_wires)
        if (inst.circuit.reg.digit_at(i, w) != 0) return false;
    }
    if (qwalk::leaked_mass(out, inst.encoding) > tol) return false;
  }
  return true;
}

}  // namespace testutil
