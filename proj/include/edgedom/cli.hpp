#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "edgedom/bench.hpp"
#include "edgedom/domination.hpp"
#include "edgedom/error.hpp"
#include "edgedom/families.hpp"
#include "edgedom/graph.hpp"
#include "edgedom/io.hpp"
#include "edgedom/oracle.hpp"
#include "edgedom/reduction.hpp"
#include "edgedom/structure.hpp"
#include "edgedom/tree_dp.hpp"

namespace edgedom::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitResource = 3;

inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

inline json ext(ExtNat x) {
  if (x.is_infinite()) return "unbounded";
  return x.value();
}

inline json pairs_json(const Graph& g, const EdgeSet& f) {
  json out = json::array();
  for (auto& [a, b] : endpoint_pairs(g, f)) out.push_back({a, b});
  return out;
}

inline json edges_json(const Graph& g) {
  json out = json::array();
  for (const Edge& e : g.edges()) out.push_back({g.name(e.u), g.name(e.v)});
  return out;
}

inline json witness_json(const Graph& g, const std::optional<EdgeSet>& w) {
  return w ? pairs_json(g, *w) : json(nullptr);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidInput, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kInvalidInput, "cannot write '" + path + "'");
  out << text;
}

// Everything one invocation produces.
struct Outcome {
  std::string digest_input;  // bytes hashed into input_digest
  json result;
  std::string summary;                   // one human line for stderr
  std::optional<std::string> raw_stdout;  // replaces the JSON report (bench CSV)
  bool report_to_out_path = true;         // --out receives the report itself
};

inline Outcome cmd_solve(const std::string& path, const std::optional<std::string>& root) {
  Outcome o;
  o.digest_input = read_file(path);
  Graph g = parse_edge_list(o.digest_input);
  std::optional<VertexId> r;
  if (root) {
    r = g.find_vertex(*root);
    if (!r) throw Error(ErrorKind::kInvalidRoot, "no vertex named '" + *root + "'");
  }
  const RootedTree rt = build_rooted(std::move(g), r);
  const SolveResult s = gamma_t_tree(rt);
  const Graph& t = rt.graph();
  o.result = {{"gamma_t", ext(s.value)},
              {"witness", witness_json(t, s.witness)},
              {"root", t.name(rt.root())},
              {"vertices", t.num_vertices()},
              {"edges", t.num_edges()}};
  o.summary = "gamma_t = " + s.value.to_string() + " on " + std::to_string(t.num_edges()) +
              " edges";
  return o;
}

inline Outcome cmd_brute(const std::string& path, bool total) {
  Outcome o;
  o.digest_input = read_file(path);
  const Graph g = parse_edge_list(o.digest_input);
  const SolveResult s = brute_min(g, total ? Domination::kTotal : Domination::kEdge);
  o.result = {{"measure", total ? "gamma_t" : "gamma"},
              {"value", ext(s.value)},
              {"witness", witness_json(g, s.witness)},
              {"vertices", g.num_vertices()},
              {"edges", g.num_edges()}};
  o.summary = std::string(total ? "gamma_t" : "gamma") + " = " + s.value.to_string();
  return o;
}

inline Outcome cmd_reduce(const std::string& path, bool check,
                          const std::optional<std::string>& graph_out) {
  Outcome o;
  o.digest_input = read_file(path);
  std::istringstream in(o.digest_input);
  const Sat3Instance inst = parse_dimacs(in);
  const Sat3Validation v = validate_sat3(inst);
  if (!v.valid) {
    std::string msg = "instance violates the occurrence pattern:";
    for (const auto& x : v.violations) msg += "\n  " + x.message;
    throw Error(ErrorKind::kInvalidInput, msg);
  }
  const ReductionOutput red = build_reduction(inst);
  const StructuralReport sr = structural_report(red.graph);
  json tags = json::object();
  for (VertexId u = 0; u < red.graph.num_vertices(); ++u) tags[red.graph.name(u)] = red.vertex_tags[u];
  o.result = {{"k", red.k},
              {"variables", inst.num_vars},
              {"clauses", inst.clauses.size()},
              {"homogeneous_clauses", red.homogeneous_clauses},
              {"vertices", red.graph.num_vertices()},
              {"edges", red.graph.num_edges()},
              {"vertex_tags", tags},
              {"structure",
               {{"bipartite", sr.bipartite},
                {"max_degree", sr.max_degree},
                {"girth", ext(sr.girth)},
                {"connected", is_connected(red.graph)}}}};
  std::ostringstream edge_list;
  write_edge_list(edge_list, red.graph);
  if (graph_out) {
    write_file(*graph_out, edge_list.str());
    o.result["graph_path"] = *graph_out;
  } else {
    o.result["edge_list"] = edges_json(red.graph);
  }
  o.report_to_out_path = false;
  o.summary = "k = " + std::to_string(red.k) + ", " + std::to_string(red.graph.num_edges()) +
              " edges";
  if (check) {
    const EquivalenceReport eq = reduction_equivalence_check(inst);
    o.result["check"] = {{"satisfiable", eq.satisfiable},
                         {"gamma_t", ext(eq.gamma_t)},
                         {"agree", eq.agree}};
    o.summary += std::string(", check ") + (eq.agree ? "agree" : "DISAGREE");
  }
  return o;
}

inline json ratio_json(const RatioReport& r) {
  return {{"gamma", ext(r.gamma)},
          {"gamma_t", ext(r.gamma_t)},
          {"ratio", to_string(r.ratio)},
          {"star", r.star},
          {"double_star", r.double_star}};
}

inline json observation_json(const std::optional<ObservationFailure>& f) {
  if (!f) return {{"ok", true}};
  return {{"ok", false}, {"clause", f->clause}, {"detail", f->detail}};
}

// Labelled-set guarantees: for vertex labels the C-C edges form a minimum
// ED-set with disjoint closed neighborhoods; for edge labels the S-edges form
// a minimum TED-set whose components are stars with at least two edges.
inline json min_set_json(const Graph& g, const EdgeSet& f, MinSetProperty which) {
  try {
    const bool ok = check_min_set_structure(g, f, which);
    return {{"size", f.size()}, {"minimum", true}, {"structure", ok}};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kInvalidCertificate) throw;
    return {{"size", f.size()}, {"minimum", false}, {"detail", e.message()}};
  }
}

inline json self_check(const VertexLabelledTree& t) {
  const auto obs = check_observation_T(t);
  json j = {{"ratio", ratio_json(check_ratio(t.graph))}, {"observation", observation_json(obs)}};
  if (!obs) j["cc_edges"] = min_set_json(t.graph, cc_edge_set(t), MinSetProperty::kDisjointClosedNeighborhoods);
  return j;
}

inline json self_check(const EdgeLabelledTree& t) {
  const auto obs = check_observation_Tt(t);
  json j = {{"ratio", ratio_json(check_ratio(t.graph))}, {"observation", observation_json(obs)}};
  if (!obs) j["s_edges"] = min_set_json(t.graph, s_edge_set(t), MinSetProperty::kNontrivialStars);
  return j;
}

inline FamilyKind parse_kind(const std::string& s) {
  if (s == "T") return FamilyKind::kT;
  if (s == "Tt") return FamilyKind::kTt;
  throw Error(ErrorKind::kInvalidInput, "family kind must be T or Tt, got '" + s + "'");
}

inline Outcome cmd_family_generate(const std::string& kind_name, std::uint64_t seed,
                                   std::size_t budget, const std::optional<std::string>& out_path) {
  const FamilyKind kind = parse_kind(kind_name);
  Outcome o;
  o.digest_input = "family " + kind_name + " " + std::to_string(seed) + " " + std::to_string(budget);
  const Generated gen = generate(kind, seed, budget);
  json trace = json::array();
  for (const TraceStep& s : gen.trace) {
    trace.push_back({{"op", "O" + std::to_string(s.op)}, {"site", s.site}});
  }
  std::ostringstream text;
  json check;
  std::visit(
      [&](const auto& t) {
        write_labelled(text, t);
        check = self_check(t);
      },
      gen.tree);
  const Graph& g = std::visit([](const auto& t) -> const Graph& { return t.graph; }, gen.tree);
  const std::string expected = kind == FamilyKind::kT ? "double" : "equal";
  check["expected_ratio"] = expected;
  check["passed"] = check["ratio"]["ratio"] == expected && check["observation"]["ok"] == true &&
                    check.value(kind == FamilyKind::kT ? "cc_edges" : "s_edges", json::object())
                            .value("structure", false);
  o.result = {{"kind", kind_name},
              {"seed", seed},
              {"budget", budget},
              {"initial", edges_json(gen.initial)},
              {"trace", trace},
              {"vertices", g.num_vertices()},
              {"edges", g.num_edges()},
              {"self_check", check}};
  if (out_path) {
    write_file(*out_path, text.str());
    o.result["tree_path"] = *out_path;
  } else {
    o.result["labelled_tree"] = text.str();
  }
  o.report_to_out_path = false;
  o.summary = kind_name + ": " + std::to_string(gen.trace.size()) + " operations, " +
              std::to_string(g.num_vertices()) + " vertices, self-check " +
              (check["passed"].get<bool>() ? "passed" : "FAILED");
  return o;
}

inline Outcome cmd_family_check(const std::string& path) {
  Outcome o;
  o.digest_input = read_file(path);
  LabelledInput in = parse_labelled(o.digest_input);
  if (!is_tree(in.graph) || in.graph.num_edges() == 0) {
    throw Error(ErrorKind::kNotATree, "input is not a tree with at least one edge");
  }
  if (in.vertex_labels) {
    o.result = self_check(VertexLabelledTree{in.graph, *in.vertex_labels});
    o.result["labels"] = "vertex";
  } else if (in.edge_labels) {
    o.result = self_check(EdgeLabelledTree{in.graph, *in.edge_labels});
    o.result["labels"] = "edge";
  } else {
    o.result = {{"ratio", ratio_json(check_ratio(in.graph))}, {"labels", "none"}};
  }
  o.summary = "ratio " + o.result["ratio"]["ratio"].get<std::string>();
  return o;
}

inline Outcome cmd_verify(const std::string& graph_path, const std::string& set_path, bool total) {
  Outcome o;
  const std::string gtext = read_file(graph_path);
  const std::string stext = read_file(set_path);
  o.digest_input = gtext + '\0' + stext;
  const Graph g = parse_edge_list(gtext);
  const Graph s = parse_edge_list(stext);
  std::vector<EdgeId> ids;
  for (const Edge& e : s.edges()) {
    const auto u = g.find_vertex(s.name(e.u));
    const auto v = g.find_vertex(s.name(e.v));
    const auto id = (u && v) ? g.find_edge(*u, *v) : std::nullopt;
    if (!id) {
      throw Error(ErrorKind::kInvalidInput,
                  "set edge " + s.name(e.u) + " " + s.name(e.v) + " is not in the graph");
    }
    ids.push_back(*id);
  }
  const EdgeSet f(std::move(ids));
  const bool dominating = total ? is_total_edge_dominating(g, f) : is_edge_dominating(g, f);
  json optimum = nullptr;
  std::string how = "none";
  if (is_tree(g) && g.num_edges() > 0) {
    const RootedTree rt = build_rooted(g);
    optimum = ext(total ? gamma_t_tree(rt).value : gamma_tree(rt).value);
    how = "tree-dp";
  } else if (is_connected(g) && g.num_edges() <= OracleOptions{}.edge_cap) {
    optimum = ext(brute_min(g, total ? Domination::kTotal : Domination::kEdge).value);
    how = "oracle";
  }
  json minimum = nullptr;
  if (!optimum.is_null()) {
    minimum = dominating && optimum.is_number() && optimum.get<std::uint64_t>() == f.size();
  }
  o.result = {{"measure", total ? "gamma_t" : "gamma"},
              {"size", f.size()},
              {"dominating", dominating},
              {"optimum", optimum},
              {"optimum_source", how},
              {"minimum", minimum}};
  o.summary = std::string(dominating ? "dominating" : "NOT dominating") + ", size " +
              std::to_string(f.size());
  return o;
}

inline Outcome cmd_bench(const std::vector<std::size_t>& sizes, std::uint64_t seed) {
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) {
      throw Error(ErrorKind::kInvalidInput, "--sizes must be strictly ascending");
    }
  }
  Outcome o;
  std::vector<BenchRow> rows;
  json jrows = json::array();
  for (std::size_t s : sizes) {
    rows.push_back(bench_size(s, seed));
    jrows.push_back({{"size", rows.back().size}, {"ns", rows.back().ns}});
  }
  o.raw_stdout = bench_csv(rows);
  o.result = {{"rows", jrows}};
  o.summary = std::to_string(rows.size()) + " sizes timed";
  return o;
}

// Runs one command line. Reports go to `out`, human text to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edge domination and total edge domination toolkit"};
  app.require_subcommand(1, 1);

  std::string path, path2, kind, cnf;
  std::optional<std::string> root, out_path, check_path;
  bool total = false, check = false;
  std::uint64_t seed = 1;
  std::size_t budget = 10;
  std::vector<std::size_t> sizes;

  auto* solve = app.add_subcommand("solve", "total edge domination number of a tree (linear time)");
  solve->add_option("graph", path, "edge-list file")->required();
  solve->add_option("--root", root, "leaf vertex to root the tree at");
  solve->add_option("--out", out_path, "write the report here");

  auto* brute = app.add_subcommand("brute", "exact search on a small connected graph");
  brute->add_option("graph", path, "edge-list file")->required();
  brute->add_flag("--total", total, "total edge domination instead of edge domination");
  brute->add_option("--out", out_path, "write the report here");

  auto* reduce = app.add_subcommand("reduce", "build the reduction graph of a SAT-3 instance");
  reduce->add_option("cnf", cnf, "DIMACS CNF file")->required();
  reduce->add_flag("--check", check, "also compare satisfiability with the optimum by brute force");
  reduce->add_option("--out", out_path, "write the graph edge list here");

  auto* family = app.add_subcommand("family", "generate or check labelled family trees");
  family->add_option("kind", kind, "T (ratio 2) or Tt (ratio 1)");
  auto* fcheck = family->add_option("--check", check_path, "labelled tree file to classify");
  auto* fseed = family->add_option("--seed", seed, "random seed");
  auto* fbudget = family->add_option("--budget", budget, "maximum number of operations");
  fcheck->excludes(fseed)->excludes(fbudget);
  family->add_option("--out", out_path, "write the labelled tree (or check report) here");

  auto* verify = app.add_subcommand("verify", "check an edge set against a graph");
  verify->add_option("graph", path, "edge-list file")->required();
  verify->add_option("set", path2, "edge-list file of set members")->required();
  verify->add_flag("--total", total, "check total edge domination");
  verify->add_option("--out", out_path, "write the report here");

  auto* bench = app.add_subcommand("bench", "time the tree solver on random trees");
  bench->add_option("--sizes", sizes, "comma-separated ascending vertex counts")->delimiter(',');
  bench->add_option("--seed", seed, "random seed");
  bench->add_option("--out", out_path, "write the CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  json command = json::array();
  for (int i = 1; i < argc; ++i) command.push_back(argv[i]);

  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome o;
    if (*solve) {
      o = cmd_solve(path, root);
    } else if (*brute) {
      o = cmd_brute(path, total);
    } else if (*reduce) {
      o = cmd_reduce(cnf, check, out_path);
    } else if (*family) {
      if (check_path) {
        o = cmd_family_check(*check_path);
        if (!kind.empty()) {
          const std::string expected = parse_kind(kind) == FamilyKind::kT ? "double" : "equal";
          o.result["expected_ratio"] = expected;
          o.result["matches"] = o.result["ratio"]["ratio"] == expected;
        }
      } else {
        if (kind.empty()) throw Error(ErrorKind::kInvalidInput, "family needs a kind or --check");
        o = cmd_family_generate(kind, seed, budget, out_path);
      }
    } else if (*verify) {
      o = cmd_verify(path, path2, total);
    } else if (*bench) {
      o = cmd_bench(sizes, seed);
    }
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (o.raw_stdout) {
      if (out_path) {
        write_file(*out_path, *o.raw_stdout);
      } else {
        out << *o.raw_stdout;
      }
    } else {
      const json report = {{"input_digest", hex64(fnv1a(o.digest_input))},
                           {"command", command},
                           {"result", o.result},
                           {"wall_ms", wall_ms}};
      const std::string text = report.dump(2) + "\n";
      if (out_path && o.report_to_out_path) {
        write_file(*out_path, text);
      } else {
        out << text;
      }
    }
    err << o.summary << " (" << static_cast<long long>(wall_ms) << " ms)\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::kOracleTooLarge ? kExitResource : kExitInput;
  }
}

}  // namespace edgedom::cli
