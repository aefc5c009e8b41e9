#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"

namespace qwalk {

// Undirected graph without duplicate edges; self-loops listed separately.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // normalized i < j, sorted, unique
  std::vector<int> self_loops;             // sorted, unique

  Graph() = default;
  Graph(int vertices, std::vector<std::pair<int, int>> e, std::vector<int> loops = {})
      : n(vertices) {
    if (n <= 0) throw DomainError("graph needs at least one vertex");
    std::set<std::pair<int, int>> uniq;
    for (auto [a, b] : e) {
      if (a == b) throw DomainError("self-loop passed as an edge; use self_loops");
      if (a > b) std::swap(a, b);
      if (a < 0 || b >= n) throw DomainError("edge endpoint out of range");
      if (!uniq.insert({a, b}).second) throw DomainError("duplicate edge");
    }
    edges.assign(uniq.begin(), uniq.end());
    std::set<int> loopset;
    for (int v : loops) {
      if (v < 0 || v >= n) throw DomainError("self-loop vertex out of range");
      if (!loopset.insert(v).second) throw DomainError("duplicate self-loop");
    }
    self_loops.assign(loopset.begin(), loopset.end());
  }

  int degree(int v) const {
    int d = 0;
    for (const auto& [a, b] : edges) d += (a == v) + (b == v);
    for (int u : self_loops) d += (u == v);  // one slot per loop
    return d;
  }

  // Neighbor vertices in ascending order; a self-loop contributes v itself once.
  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    for (const auto& [a, b] : edges) {
      if (a == v) out.push_back(b);
      if (b == v) out.push_back(a);
    }
    if (std::binary_search(self_loops.begin(), self_loops.end(), v)) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool has_edge(int a, int b) const {
    if (a == b) return std::binary_search(self_loops.begin(), self_loops.end(), a);
    if (a > b) std::swap(a, b);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
  }

  // Every vertex must carry a coin, so isolated vertices are rejected.
  void require_no_isolated() const {
    for (int v = 0; v < n; ++v)
      if (degree(v) == 0)
        throw DomainError("vertex " + std::to_string(v) + " is isolated");
  }
};

inline Graph cycle_graph(int n) {
  if (n < 2) throw DomainError("cycle needs at least 2 vertices");
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v + 1 < n; ++v) e.push_back({v, v + 1});
  if (n > 2) e.push_back({n - 1, 0});
  return Graph(n, std::move(e));
}

inline Graph complete_graph_selfloops(int n) {
  std::vector<std::pair<int, int>> e;
  std::vector<int> loops;
  for (int a = 0; a < n; ++a) {
    loops.push_back(a);
    for (int b = a + 1; b < n; ++b) e.push_back({a, b});
  }
  return Graph(n, std::move(e), std::move(loops));
}

inline Graph complete_bipartite_parity(int n) {
  // All vertices 0..n-1, edges exactly between opposite parities.
  std::vector<std::pair<int, int>> e;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if ((a ^ b) & 1) e.push_back({a, b});
  return Graph(n, std::move(e));
}

}  // namespace qwalk
