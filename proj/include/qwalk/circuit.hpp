#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "gate.hpp"
#include "state.hpp"
#include "json.hpp"

namespace qwalk {

// Ordered gate list over a register. Ancilla wires must start at digit 0 and
// are restored to 0 by every well-formed circuit.
struct Circuit {
  Register reg;
  std::vector<Gate> gates;
  std::vector<int> ancilla_wires;
  nlohmann::json meta = nlohmann::json::object();

  Circuit() = default;
  explicit Circuit(Register r, std::vector<int> ancillas = {})
      : reg(std::move(r)), ancilla_wires(std::move(ancillas)) {
    for (int w : ancilla_wires)
      if (w < 0 || w >= reg.wires())
        throw DomainError("ancilla wire " + std::to_string(w) + " out of range");
  }

  void add(Gate g) {
    g.validate_for(reg);
    gates.push_back(std::move(g));
  }

  int non_ancilla_wires() const {
    return reg.wires() - static_cast<int>(ancilla_wires.size());
  }
};

// Per-class gate accounting. A gate with one target classifies by its control
// count; anything with two or more targets is a custom payload.
struct GateCounts {
  std::size_t singles = 0;
  std::size_t hadamards = 0;  // subset of singles
  std::size_t cnots = 0;      // one target, one control
  std::map<int, std::size_t> multi;  // k >= 2 controls -> count
  std::size_t customs = 0;
  std::size_t total = 0;

  // C2NOT-equivalent cost of the multi-controlled gates under the linear
  // AND-cascade decomposition (k-1 Toffolis per C^kNOT on k-1 ancillas).
  std::size_t c2not_equivalent = 0;
  int decomposition_ancillas = 0;

  std::size_t multi_total() const {
    std::size_t s = 0;
    for (const auto& [k, c] : multi) s += c;
    return s;
  }
};

inline GateCounts gate_counts(const Circuit& circ) {
  GateCounts gc;
  gc.total = circ.gates.size();
  for (const Gate& g : circ.gates) {
    if (g.targets.size() >= 2) {
      ++gc.customs;
      continue;
    }
    const int k = static_cast<int>(g.controls.size());
    if (k == 0) {
      ++gc.singles;
      if (g.kind == GateKind::H) ++gc.hadamards;
    } else if (k == 1) {
      ++gc.cnots;
    } else {
      ++gc.multi[k];
      gc.c2not_equivalent += static_cast<std::size_t>(k - 1);
      gc.decomposition_ancillas = std::max(gc.decomposition_ancillas, k - 1);
    }
  }
  return gc;
}

namespace detail {

inline void require_zero_ancillas(const Circuit& circ, const StateVector& st) {
  if (circ.ancilla_wires.empty()) return;
  for (std::size_t i = 0; i < st.amp.size(); ++i) {
    if (st.amp[i] == cplx{0.0, 0.0}) continue;
    for (int w : circ.ancilla_wires)
      if (circ.reg.digit_at(i, w) != 0)
        throw DomainError("input state has support on nonzero ancilla wire " +
                          std::to_string(w));
  }
}

}  // namespace detail

// Applies the circuit `steps` times.
inline StateVector run(const Circuit& circ, const StateVector& input, std::size_t steps) {
  if (input.reg != circ.reg) throw DomainError("run: register mismatch");
  detail::require_zero_ancillas(circ, input);
  StateVector st = input;
  for (std::size_t s = 0; s < steps; ++s)
    for (const Gate& g : circ.gates) apply_gate_in_place(st, g);
  return st;
}

// Materializes the circuit's unitary, column j = circuit applied to basis j.
inline Matrix circuit_unitary(const Circuit& circ) {
  const std::size_t d = circ.reg.dim();
  if (d >= kMaxUnitaryDim)
    throw CapError("register dimension " + std::to_string(d) +
                   " is too large to materialize a full unitary (cap 2^13)");
  Matrix u(d);
  for (std::size_t j = 0; j < d; ++j) {
    StateVector col = run(circ, new_basis_state(circ.reg, j), 1);
    for (std::size_t i = 0; i < d; ++i) u.at(i, j) = col.amp[i];
  }
  return u;
}

// Concatenation: b after a.
inline Circuit compose(const Circuit& a, const Circuit& b) {
  if (a.reg != b.reg) throw DomainError("compose: register mismatch");
  if (a.ancilla_wires != b.ancilla_wires)
    throw DomainError("compose: ancilla sets differ");
  Circuit c(a.reg, a.ancilla_wires);
  c.gates = a.gates;
  c.gates.insert(c.gates.end(), b.gates.begin(), b.gates.end());
  c.meta = {{"family", "composed"}};
  return c;
}

}  // namespace qwalk
