// Command-line surface: build family circuits, simulate walks, verify
// circuits against the arc-space walk operator, tabulate gate counts, and
// synthesize basis permutations.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qwalk/qwalk.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitDomain = 2;
constexpr int kExitCap = 3;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    qwalk::write_text_file(out_path, text);
}

// Family selection flags shared by build, verify and counts.
struct FamilyArgs {
  std::string family;
  long long size = -1;
  int size_exp = -1;
  int depth = -1;
  std::vector<long long> dims;
  std::vector<long long> sizes;
  std::vector<long long> twists;
  std::string coin;

  void attach(CLI::App* cmd, bool family_required = true) {
    auto* f = cmd->add_option("--family", family,
                              "cycle | torus | twisted-torus | complete | bipartite | "
                              "glued-tree | qutrit-complete");
    if (family_required) f->required();
    cmd->add_option("--size", size, "cycle: number of vertices");
    cmd->add_option("--size-exp", size_exp,
                    "complete/bipartite: n for 2^n vertices; qutrit-complete: n for 3^n");
    cmd->add_option("--depth", depth, "glued-tree: tree depth l");
    cmd->add_option("--dims", dims, "torus: dimension sizes, e.g. 4,4")->delimiter(',');
    cmd->add_option("--sizes", sizes, "twisted-torus: dimension sizes, e.g. 8,8,4")
        ->delimiter(',');
    cmd->add_option("--twists", twists, "twisted-torus: per-dimension wrap offsets")
        ->delimiter(',');
    cmd->add_option("--coin", coin, "hadamard | grover | m | t (family default otherwise)");
  }

  qwalk::FamilySpec spec() const {
    qwalk::FamilySpec s;
    s.family = family;
    if (!coin.empty()) s.params["coin"] = coin;
    if (family == "cycle") {
      if (size < 0) throw qwalk::DomainError("cycle needs --size");
      s.params["size"] = size;
    } else if (family == "torus") {
      if (dims.empty()) throw qwalk::DomainError("torus needs --dims");
      s.params["dims"] = dims;
    } else if (family == "twisted-torus") {
      if (sizes.empty()) throw qwalk::DomainError("twisted-torus needs --sizes");
      s.params["sizes"] = sizes;
      if (!twists.empty()) s.params["twists"] = twists;
    } else if (family == "complete" || family == "bipartite" ||
               family == "qutrit-complete") {
      if (size_exp < 0) throw qwalk::DomainError(family + " needs --size-exp");
      s.params["size_exp"] = size_exp;
    } else if (family == "glued-tree") {
      if (depth < 0) throw qwalk::DomainError("glued-tree needs --depth");
      s.params["depth"] = depth;
    }
    return s;
  }
};

int cmd_build(const FamilyArgs& fam, const std::string& out_path) {
  const qwalk::FamilyInstance inst = qwalk::build_family(fam.spec());
  emit(qwalk::instance_to_json(inst).dump(2) + "\n", out_path);
  return kExitOk;
}

int cmd_simulate(const std::string& circuit_path, const std::string& start,
                 const std::string& amplitudes_path, long long steps,
                 const std::string& out_path) {
  if (steps < 0) throw qwalk::DomainError("steps must be >= 0");
  const qwalk::LoadedCircuit loaded =
      qwalk::circuit_from_json(qwalk::json::parse(qwalk::read_text_file(circuit_path)));
  if (!loaded.encoding)
    throw qwalk::DomainError("circuit file carries no walk encoding");
  const qwalk::Circuit& circ = loaded.circuit;
  const qwalk::Encoding& enc = *loaded.encoding;

  qwalk::StateVector state(circ.reg);
  if (!start.empty() && !amplitudes_path.empty())
    throw qwalk::DomainError("give either --start or --amplitudes, not both");
  if (!start.empty()) {
    int vertex = 0, subnode = 0;
    if (std::sscanf(start.c_str(), "%d,%d", &vertex, &subnode) != 2)
      throw qwalk::DomainError("--start must be \"vertex,subnode\"");
    state.amp[enc.label_of(enc.arc_index(vertex, subnode))] = 1.0;
  } else if (!amplitudes_path.empty()) {
    const qwalk::json amps =
        qwalk::json::parse(qwalk::read_text_file(amplitudes_path));
    if (static_cast<int>(amps.size()) != enc.arc_count())
      throw qwalk::DomainError("amplitude file must list one [re,im] pair per arc");
    for (int a = 0; a < enc.arc_count(); ++a)
      state.amp[enc.label_of(a)] =
          qwalk::cplx{amps[a].at(0).get<double>(), amps[a].at(1).get<double>()};
    if (std::abs(state.norm() - 1.0) > 1e-9)
      throw qwalk::DomainError("initial amplitudes are not normalized");
  } else {
    throw qwalk::DomainError("simulate needs --start or --amplitudes");
  }

  std::vector<std::vector<double>> per_step;
  per_step.push_back(qwalk::node_distribution(state, enc));
  for (long long s = 0; s < steps; ++s) {
    state = qwalk::run(circ, state, 1);
    per_step.push_back(qwalk::node_distribution(state, enc));
  }
  for (const auto& dist : per_step) {
    double total = 0.0;
    for (double p : dist) total += p;
    if (std::abs(total - 1.0) > 1e-10)
      throw qwalk::Error("per-step probabilities drifted from 1 (leakage?)");
  }
  emit(qwalk::distribution_csv(per_step), out_path);
  return kExitOk;
}

int cmd_verify(const FamilyArgs& fam, double tol, double leak_tol,
               const std::string& out_path) {
  const qwalk::FamilyInstance inst = qwalk::build_family(fam.spec());
  const qwalk::EquivalenceReport rep = qwalk::check_equivalence(inst, tol, leak_tol);
  emit(rep.to_json().dump(2) + "\n", out_path);
  return rep.pass ? kExitOk : kExitVerifyFail;
}

int cmd_counts(const FamilyArgs& fam, long long from, long long to,
               const std::string& out_path) {
  std::vector<double> params;
  for (long long p = from; p <= to; ++p) params.push_back(static_cast<double>(p));

  const std::string coin = fam.coin;
  const auto build = [&](double p) -> qwalk::Circuit {
    const int n = static_cast<int>(p);
    if (fam.family == "cycle")
      return qwalk::build_cycle_pow2(
                 n, coin.empty() ? qwalk::FamilyCoin::Hadamard
                                 : qwalk::parse_family_coin(coin))
          .circuit;
    if (fam.family == "complete")
      return qwalk::build_complete_selfloops(
                 n, coin.empty() ? qwalk::FamilyCoin::Hadamard
                                 : qwalk::parse_family_coin(coin))
          .circuit;
    if (fam.family == "bipartite") return qwalk::build_complete_bipartite(n).circuit;
    if (fam.family == "glued-tree") return qwalk::build_glued_tree(n).circuit;
    if (fam.family == "qutrit-complete")
      return qwalk::build_complete_qutrit(
                 n, coin.empty() ? qwalk::FamilyCoin::T
                                 : qwalk::parse_family_coin(coin))
          .circuit;
    if (fam.family == "transposition")  // worst case: all n wires differ
      return qwalk::transposition_circuit(n, 0, (std::size_t{1} << n) - 1);
    throw qwalk::DomainError("counts does not support family \"" + fam.family + "\"");
  };

  emit(qwalk::scaling_csv(qwalk::scaling_report(build, params)), out_path);
  return kExitOk;
}

int cmd_permute(int wires, long long rotation, const std::string& transpose,
                int block_exp, const std::string& table_csv,
                const std::string& out_path) {
  qwalk::PermutationSpec spec;
  spec.wires = wires;
  int given = 0;
  if (rotation >= 0) {
    ++given;
    spec.kind = qwalk::PermutationSpec::Kind::Rotation;
    spec.rotation = static_cast<std::size_t>(rotation);
  }
  if (!transpose.empty()) {
    ++given;
    spec.kind = qwalk::PermutationSpec::Kind::Transposition;
    long long a = 0, b = 0;
    if (std::sscanf(transpose.c_str(), "%lld,%lld", &a, &b) != 2 || a < 0 || b < 0)
      throw qwalk::DomainError("--transpose must be \"labelA,labelB\"");
    spec.label_a = static_cast<std::size_t>(a);
    spec.label_b = static_cast<std::size_t>(b);
  }
  if (block_exp >= 0) {
    ++given;
    spec.kind = qwalk::PermutationSpec::Kind::Block;
    spec.block_exp = block_exp;
    std::size_t value = 0;
    bool any = false;
    for (const char c : table_csv + ",") {
      if (c == ',') {
        if (any) spec.table.push_back(value);
        value = 0;
        any = false;
      } else if (c >= '0' && c <= '9') {
        value = value * 10 + static_cast<std::size_t>(c - '0');
        any = true;
      } else {
        throw qwalk::DomainError("--table must be a comma-separated label list");
      }
    }
  }
  if (given != 1)
    throw qwalk::DomainError(
        "permute needs exactly one of --rotation, --transpose, --block-exp");

  const qwalk::Circuit circ = qwalk::synthesize(spec);
  emit(qwalk::circuit_file_json(circ).dump(2) + "\n", out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum walk circuit builder, simulator and verifier"};
  app.require_subcommand(1);

  FamilyArgs build_fam, verify_fam, counts_fam;
  std::string build_out, sim_out, verify_out, counts_out, permute_out;

  auto* build = app.add_subcommand("build", "emit a one-step walk circuit as JSON");
  build_fam.attach(build);
  build->add_option("--out", build_out, "output path (stdout otherwise)");

  std::string sim_circuit, sim_start, sim_amps;
  long long sim_steps = 0;
  auto* simulate =
      app.add_subcommand("simulate", "evolve a circuit file, emit step,vertex,probability CSV");
  simulate->add_option("--circuit", sim_circuit, "circuit JSON file")->required();
  simulate->add_option("--start", sim_start, "initial arc \"vertex,subnode\"");
  simulate->add_option("--amplitudes", sim_amps, "JSON file of per-arc [re,im] pairs");
  simulate->add_option("--steps", sim_steps, "number of walk steps")->required();
  simulate->add_option("--out", sim_out, "output path (stdout otherwise)");

  double tol = qwalk::kCircuitTol, leak_tol = qwalk::kAlgebraTol;
  auto* verify =
      app.add_subcommand("verify", "check a family circuit against its walk operator");
  verify_fam.attach(verify);
  verify->add_option("--tol", tol, "entrywise deviation tolerance");
  verify->add_option("--leak-tol", leak_tol, "valid-subspace leakage tolerance");
  verify->add_option("--out", verify_out, "report path (stdout otherwise)");

  long long counts_from = 0, counts_to = -1;
  auto* counts = app.add_subcommand("counts", "gate-count scaling table as CSV");
  counts_fam.attach(counts);
  counts->add_option("--from", counts_from, "first parameter value")->required();
  counts->add_option("--to", counts_to, "last parameter value")->required();
  counts->add_option("--out", counts_out, "output path (stdout otherwise)");

  int permute_wires = 0, permute_block = -1;
  long long permute_rotation = -1;
  std::string permute_transpose, permute_table;
  auto* permute =
      app.add_subcommand("permute", "synthesize a basis permutation circuit");
  permute->add_option("--wires", permute_wires, "qubit count")->required();
  permute->add_option("--rotation", permute_rotation, "rotation amount");
  permute->add_option("--transpose", permute_transpose, "\"labelA,labelB\"");
  permute->add_option("--block-exp", permute_block, "block exponent m");
  permute->add_option("--table", permute_table, "block table, e.g. 1,2,3,0");
  permute->add_option("--out", permute_out, "output path (stdout otherwise)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return cmd_build(build_fam, build_out);
    if (simulate->parsed())
      return cmd_simulate(sim_circuit, sim_start, sim_amps, sim_steps, sim_out);
    if (verify->parsed()) return cmd_verify(verify_fam, tol, leak_tol, verify_out);
    if (counts->parsed()) return cmd_counts(counts_fam, counts_from, counts_to, counts_out);
    if (permute->parsed())
      return cmd_permute(permute_wires, permute_rotation, permute_transpose,
                         permute_block, permute_table, permute_out);
  } catch (const qwalk::CapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const qwalk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitDomain;
}
