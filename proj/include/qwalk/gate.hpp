#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"

namespace qwalk {

enum class GateKind { X, H, M, GroverG, QutritT, QutritShift, Custom };

inline std::string gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    case GateKind::M: return "m";
    case GateKind::GroverG: return "grover";
    case GateKind::QutritT: return "qutrit_t";
    case GateKind::QutritShift: return "qutrit_shift";
    case GateKind::Custom: return "custom";
  }
  return "?";
}

// A control requires one wire to hold one specific digit. Qubit "negative
// controls" are value-0 controls.
struct Control {
  int wire = 0;
  int value = 0;
  bool operator==(const Control& o) const { return wire == o.wire && value == o.value; }
};

namespace payload {

inline Matrix x() {
  return Matrix(2, {0.0, 1.0, 1.0, 0.0});
}

inline Matrix h() {
  const double s = 1.0 / std::sqrt(2.0);
  return Matrix(2, {s, s, s, -s});
}

// The column-permuted Hadamard (1/sqrt2) [[1,1],[-1,1]].
inline Matrix m() {
  const double s = 1.0 / std::sqrt(2.0);
  return Matrix(2, {s, s, -s, s});
}

inline Matrix m_dag() { return m().dagger(); }

inline Matrix z() {
  return Matrix(2, {1.0, 0.0, 0.0, -1.0});
}

// Grover coin on d dimensions: entries 2/d - delta_{ij}.
inline Matrix grover(std::size_t d) {
  if (d == 0) throw DomainError("grover coin needs dimension >= 1");
  Matrix g(d);
  const double off = 2.0 / static_cast<double>(d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) g.at(r, c) = off - (r == c ? 1.0 : 0.0);
  return g;
}

// Qutrit analogue of the Hadamard: entries (1/sqrt3) exp(sign * i 2pi/3 * a*b).
inline Matrix qutrit_t(int sign) {
  if (sign != 1 && sign != -1) throw DomainError("qutrit T sign must be +1 or -1");
  Matrix t(3);
  const double s = 1.0 / std::sqrt(3.0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const double phi = sign * 2.0 * std::numbers::pi / 3.0 * a * b;
      t.at(a, b) = cplx{s * std::cos(phi), s * std::sin(phi)};
    }
  return t;
}

// |a> -> |a+1 mod 3>
inline Matrix qutrit_shift() {
  Matrix p(3);
  for (int a = 0; a < 3; ++a) p.at((a + 1) % 3, a) = 1.0;
  return p;
}

// Swap of two wires of equal radix r, as an r^2 x r^2 permutation.
inline Matrix swap2(int radix) {
  const std::size_t r = static_cast<std::size_t>(radix);
  Matrix s(r * r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) s.at(b * r + a, a * r + b) = 1.0;
  return s;
}

}  // namespace payload

// One primitive operation: a unitary payload on 1..3 target wires plus a
// conjunction of value controls. Target wire 0 is the most significant digit
// of the payload index.
struct Gate {
  GateKind kind = GateKind::Custom;
  std::string name;  // payload name for custom gates
  std::vector<int> targets;
  std::vector<Control> controls;
  Matrix payload;
  int param = 0;  // GroverG: d; QutritT: sign

  Gate() = default;
  Gate(GateKind k, std::string nm, std::vector<int> t, std::vector<Control> c,
       Matrix p, int par = 0)
      : kind(k),
        name(std::move(nm)),
        targets(std::move(t)),
        controls(std::move(c)),
        payload(std::move(p)),
        param(par) {
    if (targets.empty()) throw DomainError("gate needs at least one target wire");
    if (targets.size() > 3)
      throw DomainError("payloads are capped at 3 target wires, got " +
                        std::to_string(targets.size()));
    for (std::size_t i = 0; i < targets.size(); ++i)
      for (std::size_t j = i + 1; j < targets.size(); ++j)
        if (targets[i] == targets[j]) throw DomainError("duplicate target wire");
    for (const Control& ctl : controls)
      for (int t : targets)
        if (ctl.wire == t)
          throw DomainError("control wire " + std::to_string(ctl.wire) +
                            " overlaps a target wire");
    if (!payload.is_unitary(kAlgebraTol))
      throw DomainError("gate payload \"" + display_name() + "\" is not unitary");
  }

  std::string display_name() const {
    return kind == GateKind::Custom ? (name.empty() ? "custom" : name)
                                    : gate_kind_name(kind);
  }

  // Checks wires and payload dimension against a register.
  void validate_for(const Register& reg) const {
    std::size_t want = 1;
    for (int t : targets) {
      if (t < 0 || t >= reg.wires())
        throw DomainError("gate target wire " + std::to_string(t) + " out of range");
      want *= static_cast<std::size_t>(reg.radices[t]);
    }
    if (payload.n != want)
      throw DomainError("gate \"" + display_name() + "\" payload dimension " +
                        std::to_string(payload.n) + " does not match target radices");
    for (const Control& ctl : controls) {
      if (ctl.wire < 0 || ctl.wire >= reg.wires())
        throw DomainError("gate control wire " + std::to_string(ctl.wire) +
                          " out of range");
      if (ctl.value < 0 || ctl.value >= reg.radices[ctl.wire])
        throw DomainError("control value " + std::to_string(ctl.value) +
                          " exceeds radix at wire " + std::to_string(ctl.wire));
    }
  }
};

namespace gates {

inline Gate x(int target, std::vector<Control> controls = {}) {
  return Gate(GateKind::X, "", {target}, std::move(controls), payload::x());
}
inline Gate h(int target, std::vector<Control> controls = {}) {
  return Gate(GateKind::H, "", {target}, std::move(controls), payload::h());
}
inline Gate m(int target, std::vector<Control> controls = {}) {
  return Gate(GateKind::M, "", {target}, std::move(controls), payload::m());
}
inline Gate grover(std::size_t d, std::vector<int> targets,
                   std::vector<Control> controls = {}) {
  return Gate(GateKind::GroverG, "", std::move(targets), std::move(controls),
              payload::grover(d), static_cast<int>(d));
}
inline Gate qutrit_t(int sign, int target, std::vector<Control> controls = {}) {
  return Gate(GateKind::QutritT, "", {target}, std::move(controls),
              payload::qutrit_t(sign), sign);
}
inline Gate qutrit_shift(int target, std::vector<Control> controls = {}) {
  return Gate(GateKind::QutritShift, "", {target}, std::move(controls),
              payload::qutrit_shift());
}
inline Gate custom(std::string name, Matrix p, std::vector<int> targets,
                   std::vector<Control> controls = {}) {
  return Gate(GateKind::Custom, std::move(name), std::move(targets),
              std::move(controls), std::move(p));
}
// CNOT: X on `target` when `control` holds 1.
inline Gate cnot(int control, int target) {
  return x(target, {{control, 1}});
}

}  // namespace gates

}  // namespace qwalk
