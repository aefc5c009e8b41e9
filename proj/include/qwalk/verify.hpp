#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "circuit.hpp"
#include "core.hpp"
#include "encoding.hpp"
#include "families.hpp"
#include "walk.hpp"
#include "json.hpp"

namespace qwalk {

// Result of comparing a circuit against the arc-space walk operator it claims
// to implement. Deviation is entrywise over the encoded (valid) subspace;
// leakage is the largest probability mass any encoded basis input sends onto
// empty labels. Global phase is not factored out.
struct EquivalenceReport {
  std::string family;
  nlohmann::json params = nlohmann::json::object();
  double deviation = 0.0;
  double leakage = 0.0;
  double tolerance = kCircuitTol;
  double leakage_tolerance = kAlgebraTol;
  bool pass = false;
  std::size_t circuit_dim = 0;
  std::size_t arc_count = 0;

  nlohmann::json to_json() const {
    return {{"family", family},
            {"params", params},
            {"deviation", deviation},
            {"leakage", leakage},
            {"tolerance", tolerance},
            {"leakage_tolerance", leakage_tolerance},
            {"pass", pass},
            {"circuit_dim", circuit_dim},
            {"arc_count", arc_count}};
  }
};

// Runs the circuit on every encoded arc basis state and compares the columns
// against the oracle U = SC under the encoding.
inline EquivalenceReport check_equivalence(const Circuit& circ, const Encoding& enc,
                                           const WalkOperator& op,
                                           double tol = kCircuitTol,
                                           double leak_tol = kAlgebraTol) {
  if (circ.reg != enc.reg)
    throw DomainError("check_equivalence: encoding register mismatch");
  if (enc.arc_count() != op.dim())
    throw DomainError("check_equivalence: arc count mismatch");
  if (circ.reg.dim() >= kMaxUnitaryDim)
    throw CapError("register dimension " + std::to_string(circ.reg.dim()) +
                   " is too large for an equivalence check (cap 2^13)");

  const Matrix u = op.unitary();
  EquivalenceReport rep;
  rep.tolerance = tol;
  rep.leakage_tolerance = leak_tol;
  rep.circuit_dim = circ.reg.dim();
  rep.arc_count = static_cast<std::size_t>(op.dim());
  if (circ.meta.contains("family")) {
    rep.family = circ.meta.at("family").get<std::string>();
    rep.params = circ.meta;
  }

  for (int j = 0; j < enc.arc_count(); ++j) {
    const StateVector col =
        run(circ, new_basis_state(circ.reg, enc.label_of(j)), 1);
    for (int i = 0; i < enc.arc_count(); ++i) {
      const double d = std::abs(col.amp[enc.label_of(i)] -
                                u.at(static_cast<std::size_t>(i),
                                     static_cast<std::size_t>(j)));
      rep.deviation = std::max(rep.deviation, d);
    }
    rep.leakage = std::max(rep.leakage, leaked_mass(col, enc));
  }
  rep.pass = rep.deviation <= tol && rep.leakage <= leak_tol;
  return rep;
}

inline EquivalenceReport check_equivalence(const FamilyInstance& inst,
                                           double tol = kCircuitTol,
                                           double leak_tol = kAlgebraTol) {
  return check_equivalence(inst.circuit, inst.encoding, inst.oracle(), tol, leak_tol);
}

// One row of a gate-count scaling table.
struct ScalingRow {
  double param = 0.0;
  int qubits = 0;
  GateCounts counts;
  double formula = 0.0;  // the builder's exact-count prediction
};

// Builds one circuit per parameter value and records counts next to the
// builder's recorded count formula.
template <typename BuildFn>
std::vector<ScalingRow> scaling_report(BuildFn&& build,
                                       const std::vector<double>& params) {
  std::vector<ScalingRow> rows;
  rows.reserve(params.size());
  for (double p : params) {
    const Circuit circ = build(p);
    ScalingRow row;
    row.param = p;
    row.qubits = circ.non_ancilla_wires();
    row.counts = gate_counts(circ);
    row.formula = circ.meta.value("gate_formula", 0.0);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qwalk
