#pragma once

// Reconstruction through rooted triples: every informative triangle of a
// Fitch graph pins down one rooted triple, the BUILD algorithm assembles the
// triples into the least-resolved topology, and the edge labels follow from
// in-degrees alone.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fitch/digraph.hpp"
#include "fitch/error.hpp"
#include "fitch/tree.hpp"

namespace fitch {

// ab|c: a and b are grouped below a vertex that excludes c.
struct RootedTriple {
  std::string a;  // a < b
  std::string b;
  std::string c;

  static RootedTriple make(std::string x, std::string y, std::string outlier) {
    if (x == y || x == outlier || y == outlier) throw Error("triple leaves must be distinct");
    if (y < x) std::swap(x, y);
    return {std::move(x), std::move(y), std::move(outlier)};
  }

  std::string to_string() const { return a + "," + b + "|" + c; }

  auto operator<=>(const RootedTriple&) const = default;
};

// Index form over a digraph's vertex order; a < b.
struct IndexTriple {
  std::uint32_t a;
  std::uint32_t b;
  std::uint32_t c;

  auto operator<=>(const IndexTriple&) const = default;
};

// Not a Fitch graph. `witness` names the offending vertices: a forbidden
// triangle, or the vertex set that admits no decomposition step.
struct NotFitch {
  std::vector<std::string> witness;
  std::string reason;
};

using Reconstruction = std::variant<EdgeLabeledTree, NotFitch>;

inline std::vector<IndexTriple> informative_triple_indices(const Digraph& g, const TriangleCatalog& cat) {
  std::vector<IndexTriple> out;
  const std::size_t n = g.size();
  for (VertexId x = 0; x < n; ++x)
    for (VertexId y = x + 1; y < n; ++y)
      for (VertexId z = y + 1; z < n; ++z) {
        const auto& cls = cat.classify(triangle_pattern(g, x, y, z));
        if (!cls.outlier) continue;
        const std::uint32_t v[3] = {static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y),
                                    static_cast<std::uint32_t>(z)};
        switch (*cls.outlier) {
          case 0: out.push_back({v[1], v[2], v[0]}); break;
          case 1: out.push_back({v[0], v[2], v[1]}); break;
          default: out.push_back({v[0], v[1], v[2]}); break;
        }
      }
  return out;
}

inline std::set<RootedTriple> informative_triples(const Digraph& g, const TriangleCatalog& cat) {
  std::set<RootedTriple> out;
  for (const auto& t : informative_triple_indices(g, cat))
    out.insert(RootedTriple{g.name(t.a), g.name(t.b), g.name(t.c)});
  return out;
}

// BUILD over index triples on leaves 0..names.size()-1. Returns the Aho tree
// (all edge labels 0) or nullopt if the triples are inconsistent. Children
// are ordered by their smallest leaf index.
inline std::optional<EdgeLabeledTree> build_aho(std::span<const IndexTriple> triples,
                                                const std::vector<std::string>& names) {
  const std::size_t n = names.size();
  if (n == 0) throw Error("BUILD needs at least one leaf");
  for (const auto& t : triples)
    if (t.a >= n || t.b >= n || t.c >= n) throw Error("triple mentions an unknown leaf");

  std::vector<std::uint32_t> uf_parent(n), slot(n);
  auto find = [&](std::uint32_t x) {
    while (uf_parent[x] != x) {
      uf_parent[x] = uf_parent[uf_parent[x]];
      x = uf_parent[x];
    }
    return x;
  };

  struct Task {
    NodeId node;
    std::vector<std::uint32_t> leaves;  // ascending
    std::vector<IndexTriple> triples;
  };
  std::vector<TreeNode> nodes(1);
  std::vector<Task> stack;
  {
    Task root{0, {}, {triples.begin(), triples.end()}};
    root.leaves.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) root.leaves[i] = i;
    stack.push_back(std::move(root));
  }
  while (!stack.empty()) {
    Task task = std::move(stack.back());
    stack.pop_back();
    if (task.leaves.size() == 1) {
      nodes[task.node].name = names[task.leaves.front()];
      continue;
    }
    for (auto v : task.leaves) uf_parent[v] = v;
    for (const auto& t : task.triples) {
      auto ra = find(t.a), rb = find(t.b);
      if (ra != rb) uf_parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    // Components in order of their smallest leaf.
    std::vector<Task> parts;
    for (auto v : task.leaves) {
      auto r = find(v);
      if (r == v) {
        slot[v] = static_cast<std::uint32_t>(parts.size());
        parts.push_back({});
      }
      parts[slot[r]].leaves.push_back(v);
    }
    if (parts.size() == 1) return std::nullopt;
    for (auto& t : task.triples) {
      auto r = find(t.a);
      if (find(t.c) == r) parts[slot[r]].triples.push_back(t);
    }
    task.triples.clear();
    task.triples.shrink_to_fit();
    for (auto& p : parts) {
      NodeId child = nodes.size();
      nodes.emplace_back();
      nodes[child].parent = task.node;
      nodes[task.node].children.push_back(child);
      p.node = child;
    }
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) stack.push_back(std::move(*it));
  }
  return EdgeLabeledTree::from_nodes(nodes, 0);
}

inline std::optional<EdgeLabeledTree> build_aho(const std::set<RootedTriple>& triples,
                                                std::vector<std::string> leaves) {
  std::sort(leaves.begin(), leaves.end());
  if (std::adjacent_find(leaves.begin(), leaves.end()) != leaves.end())
    throw Error("duplicate leaf in BUILD input");
  auto id = [&](const std::string& s) {
    auto it = std::lower_bound(leaves.begin(), leaves.end(), s);
    if (it == leaves.end() || *it != s) throw Error("triple mentions unknown leaf '" + s + "'");
    return static_cast<std::uint32_t>(it - leaves.begin());
  };
  std::vector<IndexTriple> idx;
  idx.reserve(triples.size());
  for (const auto& t : triples) {
    if (t.a == t.b || t.a == t.c || t.b == t.c) throw Error("triple leaves must be distinct");
    auto a = id(t.a), b = id(t.b);
    idx.push_back({std::min(a, b), std::max(a, b), id(t.c)});
  }
  return build_aho(idx, leaves);
}

// Labels a topology: inner edges 1; the outer edge to v is 1 iff every
// other vertex has an arc into v.
inline EdgeLabeledTree label_tree(const EdgeLabeledTree& topology, const Digraph& g) {
  if (topology.leaf_count() != g.size()) throw Error("topology leaves do not match the digraph's vertices");
  EdgeLabeledTree out = topology;
  for (NodeId v = 1; v < out.size(); ++v) {
    if (!out.is_leaf(v)) {
      out.set_label(v, EdgeLabel::one);
      continue;
    }
    // leaf names are distinct, so all found means the sets agree
    const auto x = g.find(out.name(v));
    if (!x) throw Error("topology leaves do not match the digraph's vertices");
    out.set_label(v, g.in_degree(*x) + 1 == g.size() ? EdgeLabel::one : EdgeLabel::zero);
  }
  return out;
}

// Triangle check, informative triples, BUILD, labeling.
inline Reconstruction tree_from_triples(const Digraph& g, const TriangleCatalog& cat) {
  if (g.size() == 0) throw Error("empty digraph");
  if (auto verdict = is_fitch(g, cat); !verdict) {
    const auto& w = *verdict.witness;
    return NotFitch{{g.name(w[0]), g.name(w[1]), g.name(w[2])}, "forbidden triangle"};
  }
  const auto triples = informative_triple_indices(g, cat);
  auto topology = build_aho(triples, g.vertices());
  if (!topology) return NotFitch{{}, "informative triples are inconsistent"};
  return label_tree(*topology, g);
}

}  // namespace fitch
