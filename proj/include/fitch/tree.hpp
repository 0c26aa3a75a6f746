#pragma once

// Rooted trees with {0,1} edge labels ("1" marks a horizontal transfer on
// that edge) and named leaves, plus the operations needed to go back and
// forth between trees and the relations they explain.
//
// An edge is identified by its lower endpoint (the child node id). Trees are
// immutable values; every transformation returns a new tree with freshly
// numbered nodes (preorder, children in stored order).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fitch/digraph.hpp"
#include "fitch/error.hpp"

namespace fitch {

using NodeId = std::size_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

enum class EdgeLabel : std::uint8_t { zero = 0, one = 1 };

inline EdgeLabel operator|(EdgeLabel a, EdgeLabel b) {
  return (a == EdgeLabel::one || b == EdgeLabel::one) ? EdgeLabel::one : EdgeLabel::zero;
}
inline char label_char(EdgeLabel l) { return l == EdgeLabel::one ? '1' : '0'; }

struct TreeNode {
  NodeId parent = kNoNode;
  std::vector<NodeId> children;
  EdgeLabel label = EdgeLabel::zero;  // label of (parent, this); unused at the root
  std::string name;                   // leaves only
};

class EdgeLabeledTree {
 public:
  EdgeLabeledTree() = default;

  // Compacts the part of `nodes` reachable from `root` into a new tree.
  // Parent links are recomputed from child lists. Throws Error if a leaf is
  // unnamed, an inner node is named, or leaf names repeat.
  static EdgeLabeledTree from_nodes(const std::vector<TreeNode>& nodes, NodeId root);

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  NodeId root() const { return 0; }
  const TreeNode& node(NodeId v) const { return nodes_[v]; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }

  NodeId parent(NodeId v) const { return nodes_[v].parent; }
  const std::vector<NodeId>& children(NodeId v) const { return nodes_[v].children; }
  EdgeLabel label(NodeId v) const { return nodes_[v].label; }
  // Labels never affect the shape invariants; the root keeps label 0.
  void set_label(NodeId v, EdgeLabel l) {
    if (v != root()) nodes_[v].label = l;
  }
  bool is_leaf(NodeId v) const { return nodes_[v].children.empty(); }
  const std::string& name(NodeId v) const { return nodes_[v].name; }

  std::size_t leaf_count() const { return leaf_index_.size(); }

  // Leaf ids in preorder.
  std::vector<NodeId> leaves() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < size(); ++v)
      if (is_leaf(v)) out.push_back(v);
    return out;
  }
  std::vector<std::string> leaf_names() const {
    std::vector<std::string> out;
    out.reserve(leaf_index_.size());
    for (const auto& [name, id] : leaf_index_) out.push_back(name);
    return out;
  }

  std::optional<NodeId> find_leaf(std::string_view name) const {
    auto it = leaf_index_.find(name);
    if (it == leaf_index_.end()) return std::nullopt;
    return it->second;
  }
  NodeId leaf(std::string_view name) const {
    if (auto v = find_leaf(name)) return *v;
    throw Error("unknown leaf '" + std::string(name) + "'");
  }

  bool is_inner_edge(NodeId v) const { return v != root() && !is_leaf(v); }
  bool is_outer_edge(NodeId v) const { return v != root() && is_leaf(v); }

  // Root has at least two children and every other inner node has at least
  // two children (degree >= 3).
  bool is_phylogenetic() const {
    for (NodeId v = 0; v < size(); ++v)
      if (!is_leaf(v) && children(v).size() < 2) return false;
    return leaf_count() >= 2;
  }

  // Preorder is the node numbering itself; postorder is its reverse-safe
  // counterpart where every child precedes its parent.
  std::vector<NodeId> postorder() const {
    std::vector<NodeId> order;
    order.reserve(size());
    std::vector<std::pair<NodeId, std::size_t>> stack{{root(), 0}};
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < children(v).size()) {
        NodeId c = children(v)[i++];
        stack.emplace_back(c, 0);
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
    return order;
  }

  // Number of 1-edges on the path root -> v, for every v.
  std::vector<std::size_t> ones_from_root() const {
    std::vector<std::size_t> ones(size(), 0);
    for (NodeId v = 1; v < size(); ++v)  // preorder: parent before child
      ones[v] = ones[parent(v)] + (label(v) == EdgeLabel::one ? 1 : 0);
    return ones;
  }

  std::vector<std::size_t> depths() const {
    std::vector<std::size_t> depth(size(), 0);
    for (NodeId v = 1; v < size(); ++v) depth[v] = depth[parent(v)] + 1;
    return depth;
  }

 private:
  std::vector<TreeNode> nodes_;
  std::map<std::string, NodeId, std::less<>> leaf_index_;
};

inline EdgeLabeledTree EdgeLabeledTree::from_nodes(const std::vector<TreeNode>& nodes, NodeId root) {
  EdgeLabeledTree t;
  if (root >= nodes.size()) throw Error("tree root out of range");
  // Iterative preorder copy.
  std::vector<std::pair<NodeId, NodeId>> stack{{root, kNoNode}};
  while (!stack.empty()) {
    auto [old_id, new_parent] = stack.back();
    stack.pop_back();
    const TreeNode& src = nodes[old_id];
    NodeId id = t.nodes_.size();
    TreeNode n;
    n.parent = new_parent;
    n.label = new_parent == kNoNode ? EdgeLabel::zero : src.label;
    n.name = src.name;
    t.nodes_.push_back(std::move(n));
    if (new_parent != kNoNode) t.nodes_[new_parent].children.push_back(id);
    if (src.children.empty()) {
      if (src.name.empty()) throw Error("unnamed leaf");
      if (!t.leaf_index_.emplace(src.name, id).second)
        throw Error("duplicate leaf name '" + src.name + "'");
    } else if (!src.name.empty()) {
      throw Error("inner node carries a name ('" + src.name + "')");
    }
    for (auto it = src.children.rbegin(); it != src.children.rend(); ++it) {
      if (*it >= nodes.size()) throw Error("child id out of range");
      stack.emplace_back(*it, id);
    }
    if (t.nodes_.size() > nodes.size()) throw Error("node list is not a tree");
  }
  return t;
}

// Incremental construction; node 0 is the root.
class TreeBuilder {
 public:
  TreeBuilder() { nodes_.emplace_back(); }

  NodeId root() const { return 0; }

  NodeId add_inner(NodeId parent, EdgeLabel label) { return add(parent, label, {}); }
  NodeId add_leaf(NodeId parent, std::string name, EdgeLabel label) {
    if (name.empty()) throw Error("empty leaf name");
    return add(parent, label, std::move(name));
  }
  // Names the root, producing a single-leaf tree if nothing is attached.
  void set_root_name(std::string name) { nodes_[0].name = std::move(name); }

  EdgeLabeledTree build() const { return EdgeLabeledTree::from_nodes(nodes_, 0); }

 private:
  NodeId add(NodeId parent, EdgeLabel label, std::string name) {
    if (parent >= nodes_.size()) throw Error("unknown parent node");
    if (!nodes_[parent].name.empty()) throw Error("cannot attach below a leaf");
    NodeId id = nodes_.size();
    TreeNode n;
    n.parent = parent;
    n.label = label;
    n.name = std::move(name);
    nodes_.push_back(std::move(n));
    nodes_[parent].children.push_back(id);
    return id;
  }

  std::vector<TreeNode> nodes_;
};

// ---------------------------------------------------------------------------

inline NodeId lca(const EdgeLabeledTree& t, NodeId a, NodeId b, const std::vector<std::size_t>& depth) {
  while (depth[a] > depth[b]) a = t.parent(a);
  while (depth[b] > depth[a]) b = t.parent(b);
  while (a != b) {
    a = t.parent(a);
    b = t.parent(b);
  }
  return a;
}

inline NodeId lca(const EdgeLabeledTree& t, const std::vector<std::string>& leaves) {
  if (leaves.empty()) throw Error("lca of an empty leaf set");
  const auto depth = t.depths();
  NodeId acc = t.leaf(leaves.front());
  for (std::size_t i = 1; i < leaves.size(); ++i) acc = lca(t, acc, t.leaf(leaves[i]), depth);
  return acc;
}

// (x,y) is an arc iff the path lca(x,y) -> y carries at least one 1-edge.
inline Digraph extract_relation(const EdgeLabeledTree& t) {
  DigraphBuilder b(t.leaf_names());
  // Leaf ranges in preorder: every subtree's leaves are contiguous.
  std::vector<VertexId> leaf_seq;
  std::vector<std::size_t> lo(t.size()), hi(t.size());
  for (NodeId v = 0; v < t.size(); ++v) {
    lo[v] = leaf_seq.size();
    if (t.is_leaf(v)) leaf_seq.push_back(b.index(t.name(v)));
  }
  for (NodeId v : t.postorder()) {
    hi[v] = t.is_leaf(v) ? lo[v] + 1 : hi[t.children(v).back()];
  }
  const auto ones = t.ones_from_root();
  std::vector<NodeId> leaf_node;
  leaf_node.reserve(leaf_seq.size());
  for (NodeId v = 0; v < t.size(); ++v)
    if (t.is_leaf(v)) leaf_node.push_back(v);
  for (NodeId u = 0; u < t.size(); ++u) {
    if (t.is_leaf(u)) continue;
    for (NodeId c : t.children(u)) {
      for (std::size_t yi = lo[c]; yi < hi[c]; ++yi) {
        if (ones[leaf_node[yi]] == ones[u]) continue;
        const VertexId y = leaf_seq[yi];
        for (std::size_t xi = lo[u]; xi < lo[c]; ++xi) b.add_arc(leaf_seq[xi], y);
        for (std::size_t xi = hi[c]; xi < hi[u]; ++xi) b.add_arc(leaf_seq[xi], y);
      }
    }
  }
  return std::move(b).build();
}

namespace detail {

// Returns, for each node, whether every path from it down to a leaf of its
// subtree contains a 1-edge. Leaves map to false.
inline std::vector<bool> all_paths_carry_one(const EdgeLabeledTree& t) {
  std::vector<bool> all(t.size(), false);
  for (NodeId v : t.postorder()) {
    if (t.is_leaf(v)) continue;
    bool ok = true;
    for (NodeId c : t.children(v)) ok = ok && (t.label(c) == EdgeLabel::one || all[c]);
    all[v] = ok;
  }
  return all;
}

// Simple contraction of every edge (par(v), v) with contract[v] set. Only
// inner edges may be flagged; the lower endpoint's children move up with
// their own labels.
inline EdgeLabeledTree contract_inner_edges(const EdgeLabeledTree& t, const std::vector<bool>& contract) {
  std::vector<TreeNode> nodes = t.nodes();
  for (NodeId v = 0; v < t.size(); ++v) {
    if (t.is_leaf(v)) continue;
    std::vector<NodeId> kids;
    // Expand contracted children transitively, keeping left-to-right order.
    std::vector<NodeId> stack(t.children(v).rbegin(), t.children(v).rend());
    while (!stack.empty()) {
      NodeId c = stack.back();
      stack.pop_back();
      if (contract[c]) {
        for (auto it = t.children(c).rbegin(); it != t.children(c).rend(); ++it) stack.push_back(*it);
      } else {
        kids.push_back(c);
      }
    }
    nodes[v].children = std::move(kids);
  }
  return EdgeLabeledTree::from_nodes(nodes, t.root());
}

}  // namespace detail

// Labeled restriction to `keep`: the induced phylogenetic subtree, each
// edge labeled 1 iff its path in t contains a 1-edge.
inline EdgeLabeledTree restrict(const EdgeLabeledTree& t, const std::vector<std::string>& keep) {
  if (keep.size() < 2) throw Error("restriction needs at least two leaves");
  std::vector<std::size_t> kept_below(t.size(), 0);
  for (const auto& name : keep) {
    NodeId v = t.leaf(name);
    if (kept_below[v] != 0) throw Error("duplicate leaf '" + name + "' in restriction");
    kept_below[v] = 1;
  }
  std::vector<bool> retained(t.size(), false);
  for (NodeId v : t.postorder()) {
    if (t.is_leaf(v)) {
      retained[v] = kept_below[v] == 1;
      continue;
    }
    std::size_t total = 0, branches = 0;
    for (NodeId c : t.children(v)) {
      total += kept_below[c];
      if (kept_below[c] > 0) ++branches;
    }
    kept_below[v] = total;
    retained[v] = branches >= 2;
  }
  const auto ones = t.ones_from_root();
  std::vector<TreeNode> nodes(t.size());
  std::vector<NodeId> nearest(t.size(), kNoNode);  // nearest retained ancestor-or-self
  NodeId new_root = kNoNode;
  for (NodeId v = 0; v < t.size(); ++v) {
    NodeId up = v == t.root() ? kNoNode : nearest[t.parent(v)];
    if (retained[v]) {
      nodes[v].name = t.is_leaf(v) ? t.name(v) : std::string{};
      if (up == kNoNode) {
        new_root = v;
      } else {
        nodes[v].label = ones[v] > ones[up] ? EdgeLabel::one : EdgeLabel::zero;
        nodes[up].children.push_back(v);
      }
      nearest[v] = v;
    } else {
      nearest[v] = up;
    }
  }
  return EdgeLabeledTree::from_nodes(nodes, new_root);
}

// Inner edge whose lower endpoint reaches every leaf below it only through
// some 1-edge. Outer edges are never irrelevant.
inline bool is_irrelevant_edge(const EdgeLabeledTree& t, NodeId e) {
  if (e >= t.size() || e == t.root()) throw Error("not an edge of the tree");
  if (t.is_leaf(e)) return false;
  return detail::all_paths_carry_one(t)[e];
}

// Extended contraction of edge (par(e), e).
//
// Inner edges are contracted directly. Contracting an outer edge removes
// the leaf; a parent left with a single child is then suppressed: a
// non-root parent merges its two incident edges (1 iff either was 1), a
// root hands the root role to its remaining child and the dropped edge's
// label is discarded.
inline EdgeLabeledTree contract_edge(const EdgeLabeledTree& t, NodeId e) {
  if (e >= t.size() || e == t.root()) throw Error("not an edge of the tree");
  if (!t.is_leaf(e)) {
    std::vector<bool> flag(t.size(), false);
    flag[e] = true;
    return detail::contract_inner_edges(t, flag);
  }
  if (t.leaf_count() <= 2) throw Error("contraction would leave fewer than two leaves");
  std::vector<TreeNode> nodes = t.nodes();
  const NodeId u = t.parent(e);
  auto& siblings = nodes[u].children;
  siblings.erase(std::find(siblings.begin(), siblings.end(), e));
  NodeId root = t.root();
  if (siblings.size() == 1) {
    const NodeId w = siblings.front();
    if (u == t.root()) {
      root = w;
    } else {
      const NodeId p = t.parent(u);
      nodes[w].label = t.label(u) | t.label(w);
      std::replace(nodes[p].children.begin(), nodes[p].children.end(), u, w);
    }
  }
  return EdgeLabeledTree::from_nodes(nodes, root);
}

// Every inner edge is a 1-edge and the lower endpoint of every inner edge
// has an outer 0-edge.
inline bool is_least_resolved(const EdgeLabeledTree& t) {
  for (NodeId v = 0; v < t.size(); ++v) {
    if (!t.is_inner_edge(v)) continue;
    if (t.label(v) != EdgeLabel::one) return false;
    bool has_outer_zero = false;
    for (NodeId c : t.children(v))
      has_outer_zero = has_outer_zero || (t.is_leaf(c) && t.label(c) == EdgeLabel::zero);
    if (!has_outer_zero) return false;
  }
  return true;
}

// Contracts all inner 0-edges and all irrelevant edges in one bottom-up
// pass. Irrelevance of an edge is not changed by contracting others, so the
// set can be fixed up front.
inline EdgeLabeledTree reduce_least_resolved(const EdgeLabeledTree& t) {
  const auto all_one = detail::all_paths_carry_one(t);
  std::vector<bool> flag(t.size(), false);
  bool any = false;
  for (NodeId v = 0; v < t.size(); ++v) {
    if (!t.is_inner_edge(v)) continue;
    flag[v] = t.label(v) == EdgeLabel::zero || all_one[v];
    any = any || flag[v];
  }
  return any ? detail::contract_inner_edges(t, flag) : t;
}

// Canonical string: a leaf is its name; an inner node is "(" + children
// joined by "," + ")", each child written as "<encoding>:<label>" and the
// children sorted by (encoding, label). Equal strings <=> isomorphic as
// leaf-labeled, edge-labeled rooted trees (for names free of "(),:;").
inline std::string canonical_form(const EdgeLabeledTree& t) {
  if (t.empty()) return {};
  std::vector<std::string> enc(t.size());
  for (NodeId v : t.postorder()) {
    if (t.is_leaf(v)) {
      enc[v] = t.name(v);
      continue;
    }
    std::vector<std::pair<std::string, char>> parts;
    parts.reserve(t.children(v).size());
    for (NodeId c : t.children(v)) parts.emplace_back(std::move(enc[c]), label_char(t.label(c)));
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i > 0) s += ',';
      s += parts[i].first;
      s += ':';
      s += parts[i].second;
    }
    s += ')';
    enc[v] = std::move(s);
  }
  return std::move(enc[t.root()]);
}

// Labeled display: every cluster of `small` is a cluster of big|L(small),
// and each edge of `small` is labeled 1 iff the corresponding path in `big`
// contains a 1-edge.
inline bool displays(const EdgeLabeledTree& big, const EdgeLabeledTree& small) {
  const auto small_names = small.leaf_names();
  for (const auto& n : small_names)
    if (!big.find_leaf(n)) throw Error("leaf '" + n + "' of displayed tree missing from host");

  const auto depth = big.depths();
  const auto ones = big.ones_from_root();
  std::vector<bool> in_small(big.size(), false);
  for (const auto& n : small_names) in_small[big.leaf(n)] = true;
  std::vector<std::size_t> small_below(big.size(), 0);
  for (NodeId v : big.postorder()) {
    if (big.is_leaf(v)) {
      small_below[v] = in_small[v] ? 1 : 0;
    } else {
      for (NodeId c : big.children(v)) small_below[v] += small_below[c];
    }
  }

  // Image of each small node: lca in big of its leaves.
  std::vector<NodeId> image(small.size(), kNoNode);
  std::vector<std::size_t> cluster_size(small.size(), 0);
  for (NodeId v : small.postorder()) {
    if (small.is_leaf(v)) {
      image[v] = big.leaf(small.name(v));
      cluster_size[v] = 1;
      continue;
    }
    NodeId acc = kNoNode;
    for (NodeId c : small.children(v)) {
      acc = acc == kNoNode ? image[c] : lca(big, acc, image[c], depth);
      cluster_size[v] += cluster_size[c];
    }
    image[v] = acc;
    // The cluster of small node v is present in big|L(small) iff the lca of
    // its leaves covers no further leaves of small.
    if (small_below[acc] != cluster_size[v]) return false;
  }
  for (NodeId v = 1; v < small.size(); ++v) {
    const NodeId up = image[small.parent(v)];
    const NodeId down = image[v];
    if (up == down) return false;  // two small clusters collapse onto one
    const bool path_one = ones[down] > ones[up];
    if (path_one != (small.label(v) == EdgeLabel::one)) return false;
  }
  return true;
}

}  // namespace fitch
