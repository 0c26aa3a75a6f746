#pragma once

// The `fitch` command-line tool. run_command() takes the arguments after
// the program name and writes to the given streams, so it can be driven
// in-process by tests.
//
// Exit codes: 0 success, 1 negative answer (not Fitch, infeasible, failed
// census), 2 usage or input errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "fitch/census.hpp"
#include "fitch/cotree.hpp"
#include "fitch/digraph.hpp"
#include "fitch/editing.hpp"
#include "fitch/error.hpp"
#include "fitch/generator.hpp"
#include "fitch/io.hpp"
#include "fitch/oracle.hpp"
#include "fitch/tree.hpp"
#include "fitch/triples.hpp"

namespace fitch::cli {

namespace detail {

inline std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void print_not_fitch(std::ostream& out, const NotFitch& nf) {
  out << "NOT_FITCH";
  for (const auto& v : nf.witness) out << ' ' << v;
  out << '\n';
}

inline bool looks_like_newick(const std::string& text) {
  for (char c : text) {
    if (fitch::detail::is_space(c)) continue;
    return c == '(';
  }
  return false;
}

inline std::vector<std::size_t> parse_sizes(const std::vector<std::string>& items) {
  std::vector<std::size_t> sizes;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      std::size_t pos = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(tok, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != tok.size()) throw CLI::ValidationError("--sizes", "not a size: '" + tok + "'");
      sizes.push_back(static_cast<std::size_t>(v));
    }
  }
  return sizes;
}

}  // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fitch graph recognition, least-resolved tree reconstruction and editing", "fitch"};
  app.require_subcommand(1);

  std::string input;
  std::string algo = "cotree";
  EditBudget budget;
  std::size_t max_leaves = 4;
  ScenarioConfig scenario;
  std::string mode = "yule";
  std::string emit = "graph";
  std::vector<std::string> sizes_arg;
  std::string bench_algos = "both";

  auto* check = app.add_subcommand("check", "Decide whether a graph file is a Fitch graph");
  check->add_option("graph", input, "graph file ('-' for stdin)")->required();

  auto* tree = app.add_subcommand("tree", "Least-resolved tree of a Fitch graph as labeled Newick");
  tree->add_option("graph", input, "graph file ('-' for stdin)")->required();
  tree->add_option("--algo", algo, "reconstruction route")->check(CLI::IsMember({"triples", "cotree"}));

  auto* relation = app.add_subcommand("relation", "Graph file of the relation a tree explains");
  relation->add_option("newick", input, "labeled Newick file ('-' for stdin)")->required();

  auto* reduce = app.add_subcommand("reduce", "Least-resolved reduction of a labeled tree");
  reduce->add_option("newick", input, "labeled Newick file ('-' for stdin)")->required();

  auto* triples = app.add_subcommand("triples", "Informative triples of a Fitch graph");
  triples->add_option("graph", input, "graph file ('-' for stdin)")->required();

  auto* edit = app.add_subcommand("edit", "Edit a graph into a Fitch graph within a budget");
  edit->add_option("graph", input, "graph file ('-' for stdin)")->required();
  edit->add_option("--del-vertices", budget.vertex_deletions, "vertex deletions allowed");
  edit->add_option("--del-arcs", budget.arc_deletions, "arc deletions allowed");
  edit->add_option("--add-arcs", budget.arc_insertions, "arc insertions allowed");

  auto* oracle_cmd = app.add_subcommand("oracle", "Cross-check everything against brute force");
  oracle_cmd->add_option("--max-leaves", max_leaves, "largest vertex count to enumerate")
      ->check(CLI::Range(2, 5));

  auto add_scenario = [&](CLI::App* cmd) {
    cmd->add_option("--hgt-prob", scenario.hgt_probability, "probability of a 1-edge")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--seed", scenario.seed, "random seed (FITCH_SEED overrides)");
    cmd->add_option("--mode", mode, "topology: yule, multi, caterpillar, star")
        ->check(CLI::IsMember({"yule", "binary-yule", "multi", "random-multifurcating", "caterpillar", "star"}));
  };
  auto* gen = app.add_subcommand("gen", "Random edge-labeled tree or its Fitch graph");
  gen->add_option("--leaves", scenario.leaves, "number of leaves")->required()->check(CLI::Range(2, 1 << 20));
  add_scenario(gen);
  gen->add_option("--emit", emit, "output kind")->check(CLI::IsMember({"tree", "graph"}));

  auto* bench_cmd = app.add_subcommand("bench", "Time both reconstruction routes (CSV)");
  bench_cmd->add_option("--sizes", sizes_arg, "leaf counts, comma separated")->required();
  add_scenario(bench_cmd);
  bench_cmd->add_option("--algos", bench_algos, "routes to run")
      ->check(CLI::IsMember({"both", "triples", "cotree"}));

  auto* dot = app.add_subcommand("dot", "DOT rendering of a graph file or labeled Newick tree");
  dot->add_option("input", input, "graph or Newick file ('-' for stdin)")->required();

  std::vector<std::string> argv_store{"fitch"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (const char* env = std::getenv("FITCH_SEED"); env != nullptr && *env != '\0') {
    try {
      scenario.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: FITCH_SEED is not an unsigned integer\n";
      return 2;
    }
  }

  const auto& cat = oracle::default_catalog();
  try {
    if (check->parsed()) {
      const auto g = parse_graph(detail::read_input(input));
      const auto verdict = is_fitch(g, cat);
      if (verdict) {
        out << "FITCH\n";
        return 0;
      }
      const auto& w = *verdict.witness;
      detail::print_not_fitch(out, {{g.name(w[0]), g.name(w[1]), g.name(w[2])}, ""});
      return 1;
    }
    if (tree->parsed()) {
      const auto g = parse_graph(detail::read_input(input));
      if (g.size() < 2) throw Error("a tree needs at least two vertices");
      const auto r = algo == "triples" ? tree_from_triples(g, cat) : tree_from_cotree(g);
      if (const auto* nf = std::get_if<NotFitch>(&r)) {
        detail::print_not_fitch(out, *nf);
        return 1;
      }
      out << serialize_newick(std::get<EdgeLabeledTree>(r)) << '\n';
      return 0;
    }
    if (relation->parsed()) {
      out << serialize_graph(extract_relation(parse_newick(detail::read_input(input))));
      return 0;
    }
    if (reduce->parsed()) {
      out << serialize_newick(reduce_least_resolved(parse_newick(detail::read_input(input)))) << '\n';
      return 0;
    }
    if (triples->parsed()) {
      const auto g = parse_graph(detail::read_input(input));
      if (auto verdict = is_fitch(g, cat); !verdict) {
        const auto& w = *verdict.witness;
        detail::print_not_fitch(out, {{g.name(w[0]), g.name(w[1]), g.name(w[2])}, ""});
        return 1;
      }
      for (const auto& t : informative_triples(g, cat)) out << t.to_string() << '\n';
      return 0;
    }
    if (edit->parsed()) {
      const auto g = parse_graph(detail::read_input(input));
      const auto s = solve_modification(g, budget, cat);
      if (!s) {
        out << "INFEASIBLE\n";
        return 1;
      }
      for (const auto& v : s->deleted_vertices) out << "DV " << v << '\n';
      for (const auto& [u, v] : s->deleted_arcs) out << "DA " << u << ' ' << v << '\n';
      for (const auto& [u, v] : s->inserted_arcs) out << "AA " << u << ' ' << v << '\n';
      return 0;
    }
    if (oracle_cmd->parsed()) {
      bool all = true;
      for (const auto& line : oracle::run_census(max_leaves, cat)) {
        out << (line.pass ? "PASS " : "FAIL ") << line.name << ": " << line.detail << '\n';
        all = all && line.pass;
      }
      return all ? 0 : 1;
    }
    if (gen->parsed()) {
      scenario.mode = parse_topology_mode(mode);
      const auto t = random_tree(scenario);
      if (emit == "tree")
        out << serialize_newick(t) << '\n';
      else
        out << serialize_graph(extract_relation(t));
      return 0;
    }
    if (bench_cmd->parsed()) {
      scenario.mode = parse_topology_mode(mode);
      BenchOptions opts;
      opts.triples = bench_algos != "cotree";
      opts.cotree = bench_algos != "triples";
      for (auto n : detail::parse_sizes(sizes_arg))
        if (n < 2) throw Error("bench sizes must be at least 2");
      out << bench_csv(bench(detail::parse_sizes(sizes_arg), scenario, cat, opts));
      return 0;
    }
    if (dot->parsed()) {
      const auto text = detail::read_input(input);
      out << (detail::looks_like_newick(text) ? to_dot(parse_newick(text)) : to_dot(parse_graph(text)));
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace fitch::cli
