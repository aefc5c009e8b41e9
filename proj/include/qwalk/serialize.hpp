#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "circuit.hpp"
#include "core.hpp"
#include "encoding.hpp"
#include "families.hpp"
#include "gate.hpp"
#include "graph.hpp"
#include "verify.hpp"
#include "json.hpp"

namespace qwalk {

using nlohmann::json;

inline constexpr int kCircuitSchema = 1;

// --- gates ------------------------------------------------------------------

inline json gate_to_json(const Gate& g) {
  json j;
  j["kind"] = gate_kind_name(g.kind);
  j["targets"] = g.targets;
  json ctl = json::array();
  for (const Control& c : g.controls) ctl.push_back({c.wire, c.value});
  j["controls"] = ctl;
  switch (g.kind) {
    case GateKind::GroverG: j["d"] = g.param; break;
    case GateKind::QutritT: j["sign"] = g.param; break;
    case GateKind::Custom: {
      j["name"] = g.name;
      json m = json::array();
      for (const cplx& x : g.payload.a) m.push_back({x.real(), x.imag()});
      j["matrix"] = m;
      j["dim"] = g.payload.n;
      break;
    }
    default: break;
  }
  return j;
}

inline Gate gate_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  std::vector<int> targets = j.at("targets").get<std::vector<int>>();
  std::vector<Control> controls;
  for (const auto& c : j.at("controls"))
    controls.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
  if (kind == "x") return gates::x(targets.at(0), std::move(controls));
  if (kind == "h") return gates::h(targets.at(0), std::move(controls));
  if (kind == "m") return gates::m(targets.at(0), std::move(controls));
  if (kind == "grover")
    return gates::grover(j.at("d").get<std::size_t>(), std::move(targets),
                         std::move(controls));
  if (kind == "qutrit_t")
    return gates::qutrit_t(j.at("sign").get<int>(), targets.at(0),
                           std::move(controls));
  if (kind == "qutrit_shift")
    return gates::qutrit_shift(targets.at(0), std::move(controls));
  if (kind == "custom") {
    const std::size_t dim = j.at("dim").get<std::size_t>();
    std::vector<cplx> entries;
    for (const auto& x : j.at("matrix"))
      entries.emplace_back(x.at(0).get<double>(), x.at(1).get<double>());
    return gates::custom(j.value("name", std::string{}), Matrix(dim, std::move(entries)),
                         std::move(targets), std::move(controls));
  }
  throw DomainError("unknown gate kind \"" + kind + "\"");
}

// --- graphs -----------------------------------------------------------------

inline json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({a, b});
  return {{"n", g.n}, {"edges", edges}, {"self_loops", g.self_loops}};
}

inline Graph graph_from_json(const json& j) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges"))
    edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  std::vector<int> loops;
  if (j.contains("self_loops")) loops = j.at("self_loops").get<std::vector<int>>();
  return Graph(j.at("n").get<int>(), std::move(edges), std::move(loops));
}

// --- encodings ----------------------------------------------------------------

inline json encoding_to_json(const Encoding& enc) {
  return {{"node_wires", enc.node_wires},
          {"coin_wires", enc.coin_wires},
          {"ancilla_wires", enc.ancilla_wires},
          {"arc_label", enc.arc_label},
          {"arc_vertex", enc.arc_vertex},
          {"vertex_count", enc.vertex_count}};
}

inline Encoding encoding_from_json(const json& j, const Register& reg) {
  return Encoding(reg, j.at("node_wires").get<std::vector<int>>(),
                  j.at("coin_wires").get<std::vector<int>>(),
                  j.at("ancilla_wires").get<std::vector<int>>(),
                  j.at("arc_label").get<std::vector<std::size_t>>(),
                  j.at("arc_vertex").get<std::vector<int>>(),
                  j.at("vertex_count").get<int>());
}

// --- circuits -----------------------------------------------------------------

// Versioned circuit file: register, gate list, ancilla set, metadata, and —
// for walk circuits — the encoding and graph.
inline json circuit_file_json(const Circuit& circ, const Encoding* enc = nullptr,
                              const Graph* graph = nullptr) {
  json gates_j = json::array();
  for (const Gate& g : circ.gates) gates_j.push_back(gate_to_json(g));
  json j = {{"schema", kCircuitSchema},
            {"register", {{"radices", circ.reg.radices}}},
            {"ancilla_wires", circ.ancilla_wires},
            {"gates", gates_j},
            {"meta", circ.meta}};
  if (enc) j["encoding"] = encoding_to_json(*enc);
  if (graph) j["graph"] = graph_to_json(*graph);
  return j;
}

inline json instance_to_json(const FamilyInstance& inst) {
  return circuit_file_json(inst.circuit, &inst.encoding, &inst.graph);
}

// Loaded circuit plus the pieces simulation needs. The oracle-side arc space
// is not serialized; verification always rebuilds it fresh from the family.
struct LoadedCircuit {
  Circuit circuit;
  std::optional<Encoding> encoding;
  std::optional<Graph> graph;
};

inline LoadedCircuit circuit_from_json(const json& j) {
  if (!j.contains("schema") || j.at("schema").get<int>() != kCircuitSchema)
    throw DomainError("unsupported circuit schema");
  Register reg(j.at("register").at("radices").get<std::vector<int>>());
  Circuit circ(reg, j.at("ancilla_wires").get<std::vector<int>>());
  for (const auto& gj : j.at("gates")) circ.add(gate_from_json(gj));
  circ.meta = j.value("meta", json::object());
  LoadedCircuit out;
  if (j.contains("encoding")) out.encoding = encoding_from_json(j.at("encoding"), reg);
  if (j.contains("graph")) out.graph = graph_from_json(j.at("graph"));
  out.circuit = std::move(circ);
  return out;
}

// --- files and CSV ------------------------------------------------------------

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open \"" + path + "\" for writing");
  f << text;
  if (!f) throw Error("failed writing \"" + path + "\"");
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open \"" + path + "\"");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Probabilities are printed with 12 significant digits so fixtures are
// byte-stable.
inline std::string format_probability(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", p);
  return buf;
}

// step,vertex,probability rows for steps 0..T
inline std::string distribution_csv(const std::vector<std::vector<double>>& per_step) {
  std::string out = "step,vertex,probability\n";
  for (std::size_t s = 0; s < per_step.size(); ++s)
    for (std::size_t v = 0; v < per_step[s].size(); ++v) {
      out += std::to_string(s);
      out += ',';
      out += std::to_string(v);
      out += ',';
      out += format_probability(per_step[s][v]);
      out += '\n';
    }
  return out;
}

// param,qubits,...counts...,formula rows; one C^kNOT column per k present.
inline std::string scaling_csv(const std::vector<ScalingRow>& rows) {
  int max_k = 1;
  for (const ScalingRow& r : rows)
    for (const auto& [k, cnt] : r.counts.multi) max_k = std::max(max_k, k);
  std::string out = "param,qubits,singles,hadamard,cnot,multi,custom";
  for (int k = 2; k <= max_k; ++k) out += ",c" + std::to_string(k) + "not";
  out += ",c2not_equivalent,total,formula\n";
  for (const ScalingRow& r : rows) {
    out += format_probability(r.param);
    out += ',' + std::to_string(r.qubits);
    out += ',' + std::to_string(r.counts.singles);
    out += ',' + std::to_string(r.counts.hadamards);
    out += ',' + std::to_string(r.counts.cnots);
    out += ',' + std::to_string(r.counts.multi_total());
    out += ',' + std::to_string(r.counts.customs);
    for (int k = 2; k <= max_k; ++k) {
      const auto it = r.counts.multi.find(k);
      out += ',' + std::to_string(it == r.counts.multi.end() ? 0 : it->second);
    }
    out += ',' + std::to_string(r.counts.c2not_equivalent);
    out += ',' + std::to_string(r.counts.total);
    out += ',' + format_probability(r.formula);
    out += '\n';
  }
  return out;
}

}  // namespace qwalk
