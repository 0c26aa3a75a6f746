#pragma once

// Seeded random scenarios and the reconstruction benchmark.
//
// Randomness comes from SplitMix64 (Steele, Lea & Flood 2014; the
// reference generator published alongside xoshiro). All draws are made in
// a fixed order so equal configurations give byte-identical trees on every
// platform.

#include <chrono>
#include <cstdint>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "fitch/cotree.hpp"
#include "fitch/digraph.hpp"
#include "fitch/error.hpp"
#include "fitch/tree.hpp"
#include "fitch/triples.hpp"

namespace fitch {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound); bound > 0. Rejection sampling keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t state_;
};

enum class TopologyMode { binary_yule, multifurcating, caterpillar, star };

inline TopologyMode parse_topology_mode(const std::string& s) {
  if (s == "yule" || s == "binary-yule") return TopologyMode::binary_yule;
  if (s == "multi" || s == "random-multifurcating") return TopologyMode::multifurcating;
  if (s == "caterpillar") return TopologyMode::caterpillar;
  if (s == "star") return TopologyMode::star;
  throw Error("unknown topology mode '" + s + "'");
}

struct ScenarioConfig {
  std::size_t leaves = 2;
  double hgt_probability = 0.0;
  std::uint64_t seed = 0;
  TopologyMode mode = TopologyMode::binary_yule;

  void validate() const {
    if (leaves < 2) throw Error("scenario needs at least 2 leaves");
    if (!(hgt_probability >= 0.0 && hgt_probability <= 1.0))
      throw Error("transfer probability must lie in [0, 1]");
  }
};

namespace detail {

// Topology with unnamed leaves; node 0 is the root.
inline std::vector<TreeNode> random_topology(const ScenarioConfig& cfg, SplitMix64& rng) {
  std::vector<TreeNode> nodes(1);
  auto attach = [&](NodeId parent) {
    NodeId id = nodes.size();
    nodes.emplace_back();
    nodes[id].parent = parent;
    nodes[parent].children.push_back(id);
    return id;
  };
  const std::size_t n = cfg.leaves;
  switch (cfg.mode) {
    case TopologyMode::star:
      for (std::size_t i = 0; i < n; ++i) attach(0);
      break;
    case TopologyMode::caterpillar: {
      NodeId spine = 0;
      for (std::size_t i = 0; i + 2 < n; ++i) {
        attach(spine);
        spine = attach(spine);
      }
      attach(spine);
      attach(spine);
      break;
    }
    case TopologyMode::binary_yule: {
      // Repeatedly split a uniformly chosen leaf.
      std::vector<NodeId> tips{attach(0), attach(0)};
      while (tips.size() < n) {
        const auto pick = static_cast<std::size_t>(rng.below(tips.size()));
        const NodeId v = tips[pick];
        tips[pick] = attach(v);
        tips.push_back(attach(v));
      }
      break;
    }
    case TopologyMode::multifurcating: {
      // Split a block of s leaves into k in [2, s] nonempty random blocks.
      std::vector<std::pair<NodeId, std::size_t>> work{{0, n}};
      while (!work.empty()) {
        auto [node, s] = work.back();
        work.pop_back();
        const auto k = static_cast<std::size_t>(2 + rng.below(s - 1));
        std::vector<std::size_t> sizes(k, 1);
        for (std::size_t i = k; i < s; ++i) ++sizes[rng.below(k)];
        for (auto size : sizes) {
          NodeId child = attach(node);
          if (size > 1) work.emplace_back(child, size);
        }
      }
      break;
    }
  }
  return nodes;
}

}  // namespace detail

// Leaves are named l1..ln in preorder; edge labels are drawn in preorder
// after the topology.
inline EdgeLabeledTree random_tree(const ScenarioConfig& cfg) {
  cfg.validate();
  SplitMix64 rng(cfg.seed);
  auto nodes = detail::random_topology(cfg, rng);
  // Preorder numbering first, so names and labels follow a fixed order.
  std::vector<NodeId> order;
  std::vector<NodeId> stack{0};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (auto it = nodes[v].children.rbegin(); it != nodes[v].children.rend(); ++it) stack.push_back(*it);
  }
  std::size_t leaf = 0;
  for (NodeId v : order) {
    if (v != 0) nodes[v].label = rng.bernoulli(cfg.hgt_probability) ? EdgeLabel::one : EdgeLabel::zero;
    if (nodes[v].children.empty()) nodes[v].name = "l" + std::to_string(++leaf);
  }
  return EdgeLabeledTree::from_nodes(nodes, 0);
}

inline Digraph random_fitch(const ScenarioConfig& cfg) { return extract_relation(random_tree(cfg)); }

struct BenchRow {
  std::size_t n = 0;
  std::string algo;
  double ms = 0.0;
  std::size_t tree_vertices = 0;
};

struct BenchOptions {
  bool triples = true;
  bool cotree = true;
};

// One random Fitch relation per size (seed = template seed + n); both
// pipelines run on it and must agree before any timing is reported.
inline std::vector<BenchRow> bench(const std::vector<std::size_t>& sizes, const ScenarioConfig& tmpl,
                                   const TriangleCatalog& cat, BenchOptions opts = {}) {
  std::vector<BenchRow> rows;
  for (auto n : sizes) {
    ScenarioConfig cfg = tmpl;
    cfg.leaves = n;
    cfg.seed = tmpl.seed + n;
    const Digraph g = random_fitch(cfg);
    std::string reference;
    auto run = [&](const char* name, auto&& pipeline) {
      const auto start = std::chrono::steady_clock::now();
      Reconstruction r = pipeline();
      const auto stop = std::chrono::steady_clock::now();
      const auto* tree = std::get_if<EdgeLabeledTree>(&r);
      if (!tree) throw Error(std::string(name) + " pipeline rejected a generated Fitch relation");
      const auto canon = canonical_form(*tree);
      if (!reference.empty() && canon != reference)
        throw Error("reconstruction pipelines disagree at n=" + std::to_string(n));
      reference = canon;
      rows.push_back({n, name, std::chrono::duration<double, std::milli>(stop - start).count(), tree->size()});
    };
    if (opts.triples) run("triples", [&] { return tree_from_triples(g, cat); });
    if (opts.cotree) run("cotree", [&] { return tree_from_cotree(g); });
  }
  return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "n,algo,ms,tree_vertices\n";
  out.setf(std::ios::fixed);
  out.precision(3);
  for (const auto& r : rows) out << r.n << ',' << r.algo << ',' << r.ms << ',' << r.tree_vertices << '\n';
  return out.str();
}

}  // namespace fitch
