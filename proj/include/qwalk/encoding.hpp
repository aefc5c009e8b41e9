#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "state.hpp"
#include "walk.hpp"

namespace qwalk {

// Injective map from arcs to register basis labels. Labels outside the image
// are "empty states"; circuits must never exchange amplitude with them.
struct Encoding {
  Register reg;
  std::vector<int> node_wires;
  std::vector<int> coin_wires;
  std::vector<int> ancilla_wires;
  std::vector<std::size_t> arc_label;  // arc -> basis label
  std::vector<int> arc_vertex;         // arc -> vertex
  int vertex_count = 0;
  std::vector<char> valid;             // label -> encoded?

  Encoding() = default;
  Encoding(Register r, std::vector<int> nodes, std::vector<int> coins,
           std::vector<int> ancillas, std::vector<std::size_t> labels,
           std::vector<int> vertices, int n_vertices)
      : reg(std::move(r)),
        node_wires(std::move(nodes)),
        coin_wires(std::move(coins)),
        ancilla_wires(std::move(ancillas)),
        arc_label(std::move(labels)),
        arc_vertex(std::move(vertices)),
        vertex_count(n_vertices) {
    if (arc_label.size() != arc_vertex.size())
      throw DomainError("encoding: arc label/vertex size mismatch");
    valid.assign(reg.dim(), 0);
    for (std::size_t a = 0; a < arc_label.size(); ++a) {
      const std::size_t lbl = arc_label[a];
      if (lbl >= reg.dim()) throw DomainError("encoding: label out of range");
      if (valid[lbl]) throw DomainError("encoding is not injective");
      valid[lbl] = 1;
      for (int w : ancilla_wires)
        if (reg.digit_at(lbl, w) != 0)
          throw DomainError("encoded label has nonzero ancilla digit");
      if (arc_vertex[a] < 0 || arc_vertex[a] >= vertex_count)
        throw DomainError("encoding: arc vertex out of range");
    }
  }

  int arc_count() const { return static_cast<int>(arc_label.size()); }
  std::size_t label_of(int arc) const { return arc_label[arc]; }

  // Index of the arc (vertex, subnode); arcs are grouped by vertex in order.
  int arc_index(int vertex, int subnode) const {
    int seen = 0;
    for (int a = 0; a < arc_count(); ++a)
      if (arc_vertex[a] == vertex && seen++ == subnode) return a;
    throw DomainError("no arc (" + std::to_string(vertex) + ", " +
                      std::to_string(subnode) + ")");
  }
};

// Probability of each vertex: sum of |amplitude|^2 over its encoded arcs.
inline std::vector<double> node_distribution(const StateVector& st, const Encoding& enc) {
  if (st.reg != enc.reg) throw DomainError("node_distribution: register mismatch");
  std::vector<double> dist(enc.vertex_count, 0.0);
  for (int a = 0; a < enc.arc_count(); ++a)
    dist[enc.arc_vertex[a]] += std::norm(st.amp[enc.arc_label[a]]);
  return dist;
}

// Probability mass on labels outside the encoded arc set.
inline double leaked_mass(const StateVector& st, const Encoding& enc) {
  if (st.reg != enc.reg) throw DomainError("leaked_mass: register mismatch");
  double leak = 0.0;
  for (std::size_t i = 0; i < st.amp.size(); ++i)
    if (!enc.valid[i]) leak += std::norm(st.amp[i]);
  return leak;
}

}  // namespace qwalk
