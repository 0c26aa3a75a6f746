#pragma once

// Di-cograph cotrees and the linear-size route from a cotree to a tree
// explaining the same relation.
//
// Every inner cotree vertex is a parallel (par0: no arcs between children),
// series (ser1: all arcs both ways) or order (dir1: all arcs from left
// children to right children) composition of its ordered children.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fitch/detail/bits.hpp"
#include "fitch/digraph.hpp"
#include "fitch/error.hpp"
#include "fitch/tree.hpp"
#include "fitch/triples.hpp"

namespace fitch {

enum class CotreeLabel { leaf, par0, ser1, dir1 };

inline const char* to_string(CotreeLabel l) {
  switch (l) {
    case CotreeLabel::leaf: return "leaf";
    case CotreeLabel::par0: return "0";
    case CotreeLabel::ser1: return "1";
    case CotreeLabel::dir1: return "->1";
  }
  return "?";
}

struct CotreeNode {
  CotreeLabel label = CotreeLabel::leaf;
  NodeId parent = kNoNode;
  std::vector<NodeId> children;  // left to right
  VertexId vertex = 0;           // leaves only
};

class Cotree {
 public:
  Cotree() = default;
  Cotree(std::vector<std::string> vertex_names, std::vector<CotreeNode> nodes)
      : names_(std::move(vertex_names)), nodes_(std::move(nodes)) {}

  NodeId root() const { return 0; }
  std::size_t size() const { return nodes_.size(); }
  const CotreeNode& node(NodeId v) const { return nodes_[v]; }
  CotreeLabel label(NodeId v) const { return nodes_[v].label; }
  const std::vector<NodeId>& children(NodeId v) const { return nodes_[v].children; }
  bool is_leaf(NodeId v) const { return nodes_[v].label == CotreeLabel::leaf; }
  const std::vector<std::string>& vertex_names() const { return names_; }
  const std::string& vertex_name(NodeId leaf) const { return names_[nodes_[leaf].vertex]; }

  // Leaf vertices below v in left-to-right order.
  std::vector<VertexId> leaves_below(NodeId v) const {
    std::vector<VertexId> out;
    std::vector<NodeId> stack{v};
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      if (is_leaf(u)) {
        out.push_back(nodes_[u].vertex);
        continue;
      }
      for (auto it = children(u).rbegin(); it != children(u).rend(); ++it) stack.push_back(*it);
    }
    return out;
  }

  // Structural invariants: inner vertices have >= 2 children, adjacent
  // inner vertices differ in label, every vertex appears as exactly one leaf.
  bool is_well_formed() const {
    if (nodes_.empty()) return names_.empty();
    std::vector<int> seen(names_.size(), 0);
    for (NodeId v = 0; v < nodes_.size(); ++v) {
      const auto& n = nodes_[v];
      if (n.label == CotreeLabel::leaf) {
        if (!n.children.empty() || n.vertex >= names_.size()) return false;
        ++seen[n.vertex];
        continue;
      }
      if (n.children.size() < 2) return false;
      for (NodeId c : n.children) {
        if (c >= nodes_.size() || nodes_[c].parent != v) return false;
        if (nodes_[c].label == n.label) return false;
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; });
  }

  // Relation encoded by the lca labels.
  Digraph relation() const {
    DigraphBuilder b(names_);
    for (NodeId u = 0; u < nodes_.size(); ++u) {
      const auto l = label(u);
      if (l == CotreeLabel::leaf || l == CotreeLabel::par0) continue;
      std::vector<std::vector<VertexId>> parts;
      for (NodeId c : children(u)) parts.push_back(leaves_below(c));
      for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j)
          for (VertexId x : parts[i])
            for (VertexId y : parts[j]) {
              b.add_arc(x, y);
              if (l == CotreeLabel::ser1) b.add_arc(y, x);
            }
    }
    return std::move(b).build();
  }

 private:
  std::vector<std::string> names_;
  std::vector<CotreeNode> nodes_;
};

struct NotDiCograph {
  std::vector<std::string> vertices;  // first subset admitting no split
};

namespace detail {

enum class Split { parallel, series, order };

// Connected components of the auxiliary graph on `members` (ascending),
// where u~v is determined by `kind`:
//   parallel: some arc between u and v
//   series:   not both arcs
//   order:    not exactly one arc
// Returns component index per member position; components are numbered by
// their smallest member.
inline std::vector<std::size_t> split_components(const Digraph& g, const std::vector<VertexId>& members,
                                                 const BitSet& mask, Split kind, std::size_t& count) {
  const std::size_t words = g.row_words();
  BitSet unvisited = mask;
  std::vector<std::size_t> comp_of_vertex(g.size(), 0);
  std::vector<VertexId> queue;
  count = 0;
  for (VertexId s : members) {
    if (!unvisited.test(s)) continue;
    const std::size_t id = count++;
    unvisited.reset(s);
    queue.assign(1, s);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const VertexId u = queue[qi];
      comp_of_vertex[u] = id;
      const auto out = g.out_row(u);
      const auto in = g.in_row(u);
      auto un = unvisited.words();
      for (std::size_t w = 0; w < words; ++w) {
        if (un[w] == 0) continue;
        std::uint64_t rel = 0;
        switch (kind) {
          case Split::parallel: rel = out[w] | in[w]; break;
          case Split::series: rel = ~(out[w] & in[w]); break;
          case Split::order: rel = ~(out[w] ^ in[w]); break;
        }
        std::uint64_t hit = un[w] & rel;
        un[w] &= ~hit;
        while (hit != 0) {
          queue.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(hit)));
          hit &= hit - 1;
        }
      }
    }
  }
  std::vector<std::size_t> out(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) out[i] = comp_of_vertex[members[i]];
  return out;
}

// Orders the components of an order split from source to sink. Fails
// unless every cross pair is an arc pointing from the earlier to the later
// component.
inline std::optional<std::vector<std::size_t>> order_components(
    const Digraph& g, const std::vector<std::vector<VertexId>>& parts, std::size_t universe) {
  const std::size_t m = parts.size();
  std::vector<std::size_t> beats(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j && g.has_arc(parts[i].front(), parts[j].front())) ++beats[i];
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return beats[a] > beats[b]; });
  for (std::size_t p = 0; p < m; ++p)
    if (beats[order[p]] != m - 1 - p) return std::nullopt;

  std::vector<BitSet> before(m, BitSet(universe)), after(m, BitSet(universe));
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q) {
      if (q == p) continue;
      auto& target = q < p ? before[p] : after[p];
      for (VertexId v : parts[order[q]]) target.set(v);
    }
  const std::size_t words = g.row_words();
  for (std::size_t p = 0; p < m; ++p) {
    const auto& pre = before[p].words();
    const auto& post = after[p].words();
    for (VertexId u : parts[order[p]]) {
      const auto out = g.out_row(u);
      const auto in = g.in_row(u);
      for (std::size_t w = 0; w < words; ++w) {
        const std::uint64_t others = pre[w] | post[w];
        if ((out[w] & others) != post[w] || (in[w] & others) != pre[w]) return std::nullopt;
      }
    }
  }
  return order;
}

}  // namespace detail

// Cotree by quotient recursion: on each vertex subset try a parallel split
// (weak components), a series split, then an order split; a subset of two
// or more vertices admitting none of them is not a di-cograph.
inline std::variant<Cotree, NotDiCograph> decompose(const Digraph& g) {
  const std::size_t n = g.size();
  if (n == 0) throw Error("cannot decompose an empty digraph");
  std::vector<CotreeNode> nodes(1);
  struct Task {
    NodeId node;
    std::vector<VertexId> members;  // ascending
  };
  std::vector<Task> stack;
  {
    Task root{0, std::vector<VertexId>(n)};
    for (VertexId v = 0; v < n; ++v) root.members[v] = v;
    stack.push_back(std::move(root));
  }
  while (!stack.empty()) {
    Task task = std::move(stack.back());
    stack.pop_back();
    auto& self = nodes[task.node];
    if (task.members.size() == 1) {
      self.label = CotreeLabel::leaf;
      self.vertex = task.members.front();
      continue;
    }
    detail::BitSet mask(n);
    for (VertexId v : task.members) mask.set(v);

    std::vector<std::vector<VertexId>> parts;
    CotreeLabel label = CotreeLabel::leaf;
    for (auto kind : {detail::Split::parallel, detail::Split::series, detail::Split::order}) {
      std::size_t count = 0;
      const auto comp = detail::split_components(g, task.members, mask, kind, count);
      if (count < 2) continue;
      parts.assign(count, {});
      for (std::size_t i = 0; i < task.members.size(); ++i) parts[comp[i]].push_back(task.members[i]);
      if (kind == detail::Split::order) {
        auto order = detail::order_components(g, parts, n);
        if (!order) {
          parts.clear();
          break;
        }
        std::vector<std::vector<VertexId>> sorted;
        sorted.reserve(parts.size());
        for (auto idx : *order) sorted.push_back(std::move(parts[idx]));
        parts = std::move(sorted);
      }
      label = kind == detail::Split::parallel ? CotreeLabel::par0
              : kind == detail::Split::series ? CotreeLabel::ser1
                                              : CotreeLabel::dir1;
      break;
    }
    if (parts.empty()) {
      NotDiCograph fail;
      for (VertexId v : task.members) fail.vertices.push_back(g.name(v));
      return fail;
    }
    nodes[task.node].label = label;
    std::vector<Task> next;
    for (auto& p : parts) {
      NodeId child = nodes.size();
      nodes.emplace_back();
      nodes[child].parent = task.node;
      nodes[task.node].children.push_back(child);
      next.push_back({child, std::move(p)});
    }
    for (auto it = next.rbegin(); it != next.rend(); ++it) stack.push_back(std::move(*it));
  }
  return Cotree(g.vertices(), std::move(nodes));
}

struct CotreeCheck {
  // Inner vertices v above w violating the Fitch conditions.
  std::optional<std::pair<NodeId, NodeId>> witness;

  bool is_fitch() const { return !witness.has_value(); }
  explicit operator bool() const { return is_fitch(); }
};

// Breadth-first scan for (i) a par0 vertex above any other inner vertex,
// or (ii) a dir1 vertex with a ser1 vertex in a subtree other than the one
// at its rightmost child.
inline CotreeCheck check_fitch_cotree(const Cotree& ct) {
  if (ct.size() == 0) return {};
  struct Item {
    NodeId node;
    NodeId par0_above;  // some par0 ancestor, or kNoNode
    NodeId dir1_left;   // dir1 ancestor with this node off its rightmost branch
  };
  std::vector<Item> queue{{ct.root(), kNoNode, kNoNode}};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const Item it = queue[qi];
    const auto l = ct.label(it.node);
    if (l == CotreeLabel::leaf) continue;
    if (it.par0_above != kNoNode && l != CotreeLabel::par0) return {std::pair{it.par0_above, it.node}};
    if (it.dir1_left != kNoNode && l == CotreeLabel::ser1) return {std::pair{it.dir1_left, it.node}};
    const auto& kids = ct.children(it.node);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      Item next{kids[i], it.par0_above, it.dir1_left};
      if (l == CotreeLabel::par0 && next.par0_above == kNoNode) next.par0_above = it.node;
      if (l == CotreeLabel::dir1 && i + 1 < kids.size() && next.dir1_left == kNoNode)
        next.dir1_left = it.node;
      queue.push_back(next);
    }
  }
  return {};
}

// A forbidden triangle realizing a failed cotree check.
inline std::vector<std::string> cotree_witness_triangle(const Cotree& ct, std::pair<NodeId, NodeId> vw) {
  const auto [v, w] = vw;
  // x, y: leaves under two different children of w.
  const VertexId x = ct.leaves_below(ct.children(w)[0]).front();
  const VertexId y = ct.leaves_below(ct.children(w)[1]).front();
  // z: a leaf under a child of v not containing w; the rightmost child for
  // the order case.
  NodeId branch = w;
  while (ct.node(branch).parent != v) branch = ct.node(branch).parent;
  VertexId z = 0;
  if (ct.label(v) == CotreeLabel::dir1) {
    z = ct.leaves_below(ct.children(v).back()).front();
  } else {
    for (NodeId c : ct.children(v))
      if (c != branch) {
        z = ct.leaves_below(c).front();
        break;
      }
  }
  std::vector<std::string> out{ct.vertex_names()[x], ct.vertex_names()[y], ct.vertex_names()[z]};
  std::sort(out.begin(), out.end());
  return out;
}

// par0/ser1 vertices label their child edges 0/1. A dir1 vertex with
// children x1..xk becomes the caterpillar (x1,(x2,(...,(x(k-1),xk)))) whose
// inner edges and edge to xk are 1 and whose other edges are 0.
inline EdgeLabeledTree cotree_to_fitch_tree(const Cotree& ct) {
  if (!check_fitch_cotree(ct)) throw Error("cotree does not describe a Fitch relation");
  std::vector<TreeNode> nodes;
  struct Item {
    NodeId cotree_node;
    NodeId tree_node;
  };
  nodes.emplace_back();
  std::vector<Item> stack{{ct.root(), 0}};
  auto attach = [&](NodeId parent, EdgeLabel label) {
    NodeId id = nodes.size();
    nodes.emplace_back();
    nodes[id].parent = parent;
    nodes[id].label = label;
    nodes[parent].children.push_back(id);
    return id;
  };
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    const auto l = ct.label(it.cotree_node);
    const auto& kids = ct.children(it.cotree_node);
    switch (l) {
      case CotreeLabel::leaf:
        nodes[it.tree_node].name = ct.vertex_name(it.cotree_node);
        break;
      case CotreeLabel::par0:
      case CotreeLabel::ser1: {
        const EdgeLabel el = l == CotreeLabel::ser1 ? EdgeLabel::one : EdgeLabel::zero;
        for (NodeId c : kids) stack.push_back({c, attach(it.tree_node, el)});
        break;
      }
      case CotreeLabel::dir1: {
        NodeId spine = it.tree_node;
        for (std::size_t i = 0; i + 1 < kids.size(); ++i) {
          stack.push_back({kids[i], attach(spine, EdgeLabel::zero)});
          if (i + 2 < kids.size()) spine = attach(spine, EdgeLabel::one);
        }
        stack.push_back({kids.back(), attach(spine, EdgeLabel::one)});
        break;
      }
    }
  }
  return EdgeLabeledTree::from_nodes(nodes, 0);
}

// decompose -> check -> transform -> reduce.
inline Reconstruction tree_from_cotree(const Digraph& g) {
  auto decomposed = decompose(g);
  if (auto* fail = std::get_if<NotDiCograph>(&decomposed))
    return NotFitch{fail->vertices, "not a di-cograph"};
  const auto& ct = std::get<Cotree>(decomposed);
  if (auto check = check_fitch_cotree(ct); !check)
    return NotFitch{cotree_witness_triangle(ct, *check.witness), "forbidden triangle"};
  if (g.size() == 1) return cotree_to_fitch_tree(ct);
  return reduce_least_resolved(cotree_to_fitch_tree(ct));
}

}  // namespace fitch
