#pragma once

// Exhaustive ground truth on small leaf sets: every phylogenetic tree with
// every {0,1} edge labeling, the relation each one explains, and the
// triangle catalog derived from the 3-leaf case.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "fitch/digraph.hpp"
#include "fitch/error.hpp"
#include "fitch/tree.hpp"

namespace fitch::oracle {

inline constexpr std::size_t kMaxLeaves = 5;

namespace detail {

// Copies the subtree of `src` at `v` below `parent` in `nodes`.
inline void graft(std::vector<TreeNode>& nodes, NodeId parent, const EdgeLabeledTree& src, NodeId v) {
  std::vector<std::pair<NodeId, NodeId>> stack{{v, parent}};
  while (!stack.empty()) {
    auto [s, p] = stack.back();
    stack.pop_back();
    NodeId id = nodes.size();
    nodes.emplace_back();
    nodes[id].parent = p;
    nodes[id].name = src.name(s);
    nodes[p].children.push_back(id);
    for (auto it = src.children(s).rbegin(); it != src.children(s).rend(); ++it) stack.emplace_back(*it, id);
  }
}

// All set partitions of `items` into at least two blocks.
inline void for_each_partition(const std::vector<std::string>& items,
                               const std::function<void(const std::vector<std::vector<std::string>>&)>& f) {
  std::vector<std::size_t> block(items.size(), 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == items.size()) {
      if (used < 2) return;
      std::vector<std::vector<std::string>> blocks(used);
      for (std::size_t k = 0; k < items.size(); ++k) blocks[block[k]].push_back(items[k]);
      f(blocks);
      return;
    }
    for (std::size_t b = 0; b <= used; ++b) {
      block[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  rec(0, 0);
}

// Unlabeled phylogenetic topologies on `leaves` (|leaves| >= 2).
inline std::vector<EdgeLabeledTree> topologies(const std::vector<std::string>& leaves) {
  std::vector<EdgeLabeledTree> out;
  for_each_partition(leaves, [&](const std::vector<std::vector<std::string>>& blocks) {
    std::vector<std::vector<EdgeLabeledTree>> options;
    for (const auto& b : blocks) {
      if (b.size() == 1) {
        TreeBuilder tb;
        tb.set_root_name(b.front());
        options.push_back({tb.build()});
      } else {
        options.push_back(topologies(b));
      }
    }
    std::vector<std::size_t> pick(blocks.size(), 0);
    while (true) {
      std::vector<TreeNode> nodes(1);
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& sub = options[i][pick[i]];
        graft(nodes, 0, sub, sub.root());
      }
      out.push_back(EdgeLabeledTree::from_nodes(nodes, 0));
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  });
  return out;
}

}  // namespace detail

// Calls f on every phylogenetic tree on exactly `leaves` under every edge
// labeling; each canonical form is emitted once.
inline void for_each_labeled_tree(std::vector<std::string> leaves,
                                  const std::function<void(const EdgeLabeledTree&)>& f) {
  if (leaves.size() < 2 || leaves.size() > kMaxLeaves)
    throw Error("tree enumeration supports 2 to " + std::to_string(kMaxLeaves) + " leaves");
  std::sort(leaves.begin(), leaves.end());
  if (std::adjacent_find(leaves.begin(), leaves.end()) != leaves.end())
    throw Error("duplicate leaf name in enumeration");
  std::set<std::string> seen;
  for (const auto& topo : detail::topologies(leaves)) {
    const std::size_t edges = topo.size() - 1;
    for (std::uint32_t labels = 0; labels < (1U << edges); ++labels) {
      std::vector<TreeNode> nodes = topo.nodes();
      for (NodeId v = 1; v < nodes.size(); ++v)
        nodes[v].label = ((labels >> (v - 1)) & 1U) ? EdgeLabel::one : EdgeLabel::zero;
      auto t = EdgeLabeledTree::from_nodes(nodes, 0);
      if (seen.insert(canonical_form(t)).second) f(t);
    }
  }
}

inline std::vector<EdgeLabeledTree> enumerate_labeled_trees(const std::vector<std::string>& leaves) {
  std::vector<EdgeLabeledTree> out;
  for_each_labeled_tree(leaves, [&](const EdgeLabeledTree& t) { out.push_back(t); });
  return out;
}

// Relation on n <= 5 vertices packed into n*n bits (bit u*n+v for arc u->v).
inline std::uint32_t relation_key(const Digraph& g) {
  std::uint32_t key = 0;
  const std::size_t n = g.size();
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = 0; v < n; ++v)
      if (g.has_arc(u, v)) key |= std::uint32_t{1} << (u * n + v);
  return key;
}

// All labeled trees on placeholder leaves v0..v(n-1), indexed by the
// relation they explain. Placeholder order matches vertex order.
class ExplanationTable {
 public:
  explicit ExplanationTable(std::size_t n) : n_(n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(placeholder(i));
    for_each_labeled_tree(names, [&](const EdgeLabeledTree& t) {
      by_relation_[relation_key(extract_relation(t))].push_back(trees_.size());
      trees_.push_back(t);
    });
  }

  static std::string placeholder(std::size_t i) { return "v" + std::to_string(i); }

  std::size_t leaf_count() const { return n_; }
  const std::vector<EdgeLabeledTree>& trees() const { return trees_; }

  const std::vector<std::size_t>& explaining(std::uint32_t key) const {
    static const std::vector<std::size_t> none;
    auto it = by_relation_.find(key);
    return it == by_relation_.end() ? none : it->second;
  }

 private:
  std::size_t n_;
  std::vector<EdgeLabeledTree> trees_;
  std::unordered_map<std::uint32_t, std::vector<std::size_t>> by_relation_;
};

// Shared, lazily built tables for 2..5 leaves.
inline const ExplanationTable& explanation_table(std::size_t n) {
  if (n < 2 || n > kMaxLeaves)
    throw Error("oracle supports 2 to " + std::to_string(kMaxLeaves) + " vertices");
  static std::mutex mu;
  static std::array<std::unique_ptr<ExplanationTable>, kMaxLeaves + 1> tables;
  std::lock_guard lock(mu);
  if (!tables[n]) tables[n] = std::make_unique<ExplanationTable>(n);
  return *tables[n];
}

// Copy of a placeholder-named tree with leaves renamed to g's vertices.
inline EdgeLabeledTree rename_leaves(const EdgeLabeledTree& t, const Digraph& g) {
  std::vector<TreeNode> nodes = t.nodes();
  for (auto& node : nodes)
    if (!node.name.empty()) node.name = g.name(std::stoul(node.name.substr(1)));
  return EdgeLabeledTree::from_nodes(nodes, t.root());
}

inline TriangleCatalog derive_triangle_catalog() {
  const auto& table = explanation_table(3);
  std::array<bool, 64> valid{};
  std::array<std::optional<int>, 64> outlier{};
  for (int m = 0; m < 64; ++m) {
    const TrianglePattern p{static_cast<std::uint8_t>(m)};
    std::uint32_t key = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (a != b && p.has(a, b)) key |= std::uint32_t{1} << (a * 3 + b);
    const auto& ids = table.explaining(key);
    valid[m] = !ids.empty();
    if (ids.size() != 1) continue;
    const auto& t = table.trees()[ids.front()];
    if (t.children(t.root()).size() != 2) continue;
    for (NodeId c : t.children(t.root()))
      if (t.is_leaf(c)) outlier[m] = static_cast<int>(std::stoul(t.name(c).substr(1)));
  }
  return TriangleCatalog(valid, outlier);
}

inline const TriangleCatalog& default_catalog() {
  static const TriangleCatalog cat = derive_triangle_catalog();
  return cat;
}

// Some tree explains g exactly.
inline bool brute_force_is_valid(const Digraph& g) {
  if (g.size() > kMaxLeaves) throw Error("brute-force validity is capped at 5 vertices");
  if (g.size() < 2) return true;
  return !explanation_table(g.size()).explaining(relation_key(g)).empty();
}

// All explaining trees with the minimum number of vertices, sorted by
// canonical form.
inline std::vector<EdgeLabeledTree> brute_force_min_tree(const Digraph& g) {
  if (g.size() > kMaxLeaves) throw Error("brute-force minimum tree is capped at 5 vertices");
  if (g.size() < 2) throw Error("brute-force minimum tree needs at least 2 vertices");
  const auto& table = explanation_table(g.size());
  const auto& ids = table.explaining(relation_key(g));
  if (ids.empty()) throw Error("relation is not explained by any tree");
  std::size_t best = SIZE_MAX;
  for (auto id : ids) best = std::min(best, table.trees()[id].size());
  std::vector<std::pair<std::string, EdgeLabeledTree>> found;
  for (auto id : ids)
    if (table.trees()[id].size() == best) {
      auto t = rename_leaves(table.trees()[id], g);
      found.emplace_back(canonical_form(t), std::move(t));
    }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<EdgeLabeledTree> out;
  for (auto& [key, t] : found) out.push_back(std::move(t));
  return out;
}

}  // namespace fitch::oracle
