#pragma once

// Fitch graph modification: delete at most i vertices, delete at most j arcs
// and insert at most k arcs so that the result is a Fitch graph.
//
// Being Fitch is hereditary and characterized by forbidden triangles, so a
// bounded search tree suffices: any solution must touch every invalid
// triangle, and a triangle offers at most 3 + 6 local fixes.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fitch/digraph.hpp"
#include "fitch/error.hpp"

namespace fitch {

struct EditBudget {
  std::size_t vertex_deletions = 0;
  std::size_t arc_deletions = 0;
  std::size_t arc_insertions = 0;

  std::size_t total() const { return vertex_deletions + arc_deletions + arc_insertions; }
};

struct EditSolution {
  std::vector<std::string> deleted_vertices;
  std::vector<std::pair<std::string, std::string>> deleted_arcs;
  std::vector<std::pair<std::string, std::string>> inserted_arcs;

  bool empty() const { return deleted_vertices.empty() && deleted_arcs.empty() && inserted_arcs.empty(); }
  bool fits(const EditBudget& b) const {
    return deleted_vertices.size() <= b.vertex_deletions && deleted_arcs.size() <= b.arc_deletions &&
           inserted_arcs.size() <= b.arc_insertions;
  }
};

// Arc edits are applied first, then the vertex deletions. Deleted arcs must
// exist in g and inserted arcs must not.
inline Digraph apply_edits(const Digraph& g, const EditSolution& s) {
  DigraphBuilder b(g.vertices());
  for (auto [u, v] : g.arcs()) b.add_arc(u, v);
  for (const auto& [u, v] : s.deleted_arcs) {
    if (!g.has_arc(u, v)) throw Error("deleted arc " + u + "->" + v + " is not in the graph");
    b.remove_arc(b.index(u), b.index(v));
  }
  for (const auto& [u, v] : s.inserted_arcs) {
    if (g.has_arc(u, v)) throw Error("inserted arc " + u + "->" + v + " is already in the graph");
    b.add_arc(u, v);
  }
  std::vector<bool> gone(g.size(), false);
  for (const auto& v : s.deleted_vertices) {
    auto id = g.index(v);
    if (gone[id]) throw Error("vertex '" + v + "' deleted twice");
    gone[id] = true;
  }
  std::vector<std::string> keep;
  for (VertexId v = 0; v < g.size(); ++v)
    if (!gone[v]) keep.push_back(g.name(v));
  return induced_subrelation(std::move(b).build(), keep);
}

namespace detail {

class ModificationSearch {
 public:
  ModificationSearch(const Digraph& g, const TriangleCatalog& cat)
      : g_(g), cat_(cat), n_(g.size()), alive_(n_, true), arc_(n_ * n_, false) {
    for (auto [u, v] : g.arcs()) arc_[u * n_ + v] = true;
  }

  std::optional<EditSolution> run(EditBudget budget) {
    if (!search(budget)) return std::nullopt;
    EditSolution s;
    std::vector<std::uint32_t> edits = edits_;
    std::sort(edits.begin(), edits.end());
    for (auto e : edits) {
      if (e < n_) {
        s.deleted_vertices.push_back(g_.name(e));
      } else if (e < n_ + n_ * n_) {
        const auto a = e - n_;
        s.deleted_arcs.emplace_back(g_.name(a / n_), g_.name(a % n_));
      } else {
        const auto a = e - n_ - n_ * n_;
        s.inserted_arcs.emplace_back(g_.name(a / n_), g_.name(a % n_));
      }
    }
    return s;
  }

 private:
  bool has(VertexId u, VertexId v) const { return arc_[u * n_ + v]; }

  std::optional<std::array<VertexId, 3>> first_invalid() const {
    for (VertexId x = 0; x < n_; ++x) {
      if (!alive_[x]) continue;
      for (VertexId y = x + 1; y < n_; ++y) {
        if (!alive_[y]) continue;
        for (VertexId z = y + 1; z < n_; ++z) {
          if (!alive_[z]) continue;
          const unsigned mask = (has(x, y) ? 1U : 0U) | (has(y, x) ? 2U : 0U) | (has(x, z) ? 4U : 0U) |
                                (has(z, x) ? 8U : 0U) | (has(y, z) ? 16U : 0U) | (has(z, y) ? 32U : 0U);
          if (!cat_.classify({static_cast<std::uint8_t>(mask)}).valid()) return std::array{x, y, z};
        }
      }
    }
    return std::nullopt;
  }

  bool try_edit(std::uint32_t code, EditBudget budget) {
    edits_.push_back(code);
    auto signature = edits_;
    std::sort(signature.begin(), signature.end());
    bool ok = false;
    if (failed_.insert(std::move(signature)).second) ok = search(budget);
    if (!ok) edits_.pop_back();
    return ok;
  }

  // Deterministic branch order: vertex deletions, arc deletions, arc
  // insertions, each lexicographic within the triangle.
  bool search(EditBudget budget) {
    const auto tri = first_invalid();
    if (!tri) return true;
    const auto& t = *tri;
    if (budget.vertex_deletions > 0) {
      auto next = budget;
      --next.vertex_deletions;
      for (VertexId v : t) {
        alive_[v] = false;
        if (try_edit(static_cast<std::uint32_t>(v), next)) return true;
        alive_[v] = true;
      }
    }
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (a != b) pairs.emplace_back(t[a], t[b]);
    std::sort(pairs.begin(), pairs.end());
    if (budget.arc_deletions > 0) {
      auto next = budget;
      --next.arc_deletions;
      for (auto [u, v] : pairs) {
        if (!has(u, v) || !g_.has_arc(u, v)) continue;
        arc_[u * n_ + v] = false;
        if (try_edit(static_cast<std::uint32_t>(n_ + u * n_ + v), next)) return true;
        arc_[u * n_ + v] = true;
      }
    }
    if (budget.arc_insertions > 0) {
      auto next = budget;
      --next.arc_insertions;
      for (auto [u, v] : pairs) {
        if (has(u, v) || g_.has_arc(u, v)) continue;
        arc_[u * n_ + v] = true;
        if (try_edit(static_cast<std::uint32_t>(n_ + n_ * n_ + u * n_ + v), next)) return true;
        arc_[u * n_ + v] = false;
      }
    }
    return false;
  }

  const Digraph& g_;
  const TriangleCatalog& cat_;
  std::size_t n_;
  std::vector<bool> alive_;
  std::vector<bool> arc_;
  std::vector<std::uint32_t> edits_;
  std::set<std::vector<std::uint32_t>> failed_;  // edit sets already explored
};

// Subsets of `pool` with at most `limit` elements, smallest first.
template <typename T, typename F>
bool for_each_subset(const std::vector<T>& pool, std::size_t limit, F&& f) {
  std::vector<std::size_t> idx;
  std::vector<T> pick;
  for (std::size_t size = 0; size <= std::min(limit, pool.size()); ++size) {
    idx.resize(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      pick.clear();
      for (auto i : idx) pick.push_back(pool[i]);
      if (f(pick)) return true;
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == pool.size() - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t k = i; k < size; ++k) idx[k] = idx[k - 1] + 1;
    }
  }
  return false;
}

}  // namespace detail

// Bounded search tree; nullopt means no solution within the budget.
inline std::optional<EditSolution> solve_modification(const Digraph& g, EditBudget budget,
                                                      const TriangleCatalog& cat) {
  return detail::ModificationSearch(g, cat).run(budget);
}

// Exhaustive search over all edit sets within the budget.
inline std::optional<EditSolution> brute_force_modification(const Digraph& g, EditBudget budget,
                                                            const TriangleCatalog& cat) {
  if (g.size() > 4 || budget.total() > 3)
    throw Error("brute-force modification is limited to 4 vertices and 3 edits");
  std::vector<std::string> vertices = g.vertices();
  std::vector<std::pair<std::string, std::string>> present, absent;
  for (VertexId u = 0; u < g.size(); ++u)
    for (VertexId v = 0; v < g.size(); ++v) {
      if (u == v) continue;
      (g.has_arc(u, v) ? present : absent).emplace_back(g.name(u), g.name(v));
    }
  std::optional<EditSolution> found;
  detail::for_each_subset(vertices, budget.vertex_deletions, [&](const auto& dv) {
    return detail::for_each_subset(present, budget.arc_deletions, [&](const auto& da) {
      return detail::for_each_subset(absent, budget.arc_insertions, [&](const auto& aa) {
        EditSolution s{dv, da, aa};
        if (!is_fitch(apply_edits(g, s), cat)) return false;
        found = std::move(s);
        return true;
      });
    });
  });
  return found;
}

}  // namespace fitch
