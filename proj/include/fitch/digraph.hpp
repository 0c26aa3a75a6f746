#pragma once

// Irreflexive digraphs over named vertices, 3-vertex induced subgraph
// ("triangle") patterns, and recognition of Fitch graphs by forbidden
// triangles.
//
// Vertices are kept in byte-wise sorted name order; a VertexId is the
// position in that order. Arcs are stored as dense out- and in-bit rows so
// membership is O(1) and row operations work a word at a time.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fitch/detail/bits.hpp"
#include "fitch/error.hpp"

namespace fitch {

using VertexId = std::size_t;

class DigraphBuilder;

class Digraph {
 public:
  Digraph() = default;

  // Throws Error on duplicate/empty names, unknown endpoints or self-arcs.
  explicit Digraph(std::vector<std::string> vertices,
                   const std::vector<std::pair<std::string, std::string>>& arcs = {});

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& vertices() const { return names_; }
  const std::string& name(VertexId v) const { return names_[v]; }

  std::optional<VertexId> find(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  VertexId index(std::string_view name) const {
    if (auto v = find(name)) return *v;
    throw Error("unknown vertex '" + std::string(name) + "'");
  }

  bool has_arc(VertexId u, VertexId v) const { return detail::test_bit(out_row(u), v); }
  bool has_arc(std::string_view u, std::string_view v) const { return has_arc(index(u), index(v)); }

  std::size_t arc_count() const { return arc_count_; }
  std::size_t out_degree(VertexId v) const { return out_degree_[v]; }
  std::size_t in_degree(VertexId v) const { return in_degree_[v]; }

  std::size_t row_words() const { return words_; }
  std::span<const std::uint64_t> out_row(VertexId v) const {
    return {out_.data() + v * words_, words_};
  }
  std::span<const std::uint64_t> in_row(VertexId v) const {
    return {in_.data() + v * words_, words_};
  }

  // Sorted by (tail, head).
  std::vector<std::pair<VertexId, VertexId>> arcs() const {
    std::vector<std::pair<VertexId, VertexId>> result;
    result.reserve(arc_count_);
    for (VertexId u = 0; u < size(); ++u)
      detail::for_each_bit(out_row(u), [&](std::size_t v) { result.emplace_back(u, v); });
    return result;
  }

  bool operator==(const Digraph& other) const {
    return names_ == other.names_ && out_ == other.out_;
  }

 private:
  friend class DigraphBuilder;

  struct NameHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };

  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId, NameHash, std::equal_to<>> index_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> out_;
  std::vector<std::uint64_t> in_;
  std::vector<std::size_t> out_degree_;
  std::vector<std::size_t> in_degree_;
  std::size_t arc_count_ = 0;
};

// Mutable staging area; build() freezes it into a Digraph.
class DigraphBuilder {
 public:
  explicit DigraphBuilder(std::vector<std::string> vertices) {
    std::sort(vertices.begin(), vertices.end());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (vertices[i].empty()) throw Error("empty vertex name");
      if (i > 0 && vertices[i] == vertices[i - 1])
        throw Error("duplicate vertex '" + vertices[i] + "'");
    }
    g_.names_ = std::move(vertices);
    g_.index_.reserve(g_.names_.size());
    for (VertexId v = 0; v < g_.names_.size(); ++v) g_.index_.emplace(g_.names_[v], v);
    g_.words_ = detail::words_for(g_.names_.size());
    g_.out_.assign(g_.names_.size() * g_.words_, 0);
    g_.in_.assign(g_.names_.size() * g_.words_, 0);
    g_.out_degree_.assign(g_.names_.size(), 0);
    g_.in_degree_.assign(g_.names_.size(), 0);
  }

  std::size_t size() const { return g_.size(); }
  VertexId index(std::string_view name) const { return g_.index(name); }
  const std::string& name(VertexId v) const { return g_.name(v); }
  bool has_arc(VertexId u, VertexId v) const { return g_.has_arc(u, v); }

  void add_arc(VertexId u, VertexId v) {
    if (u == v) throw Error("self-arc on '" + g_.names_[u] + "'");
    if (g_.has_arc(u, v)) return;
    detail::set_bit(row(g_.out_, u), v);
    detail::set_bit(row(g_.in_, v), u);
    ++g_.out_degree_[u];
    ++g_.in_degree_[v];
    ++g_.arc_count_;
  }
  void add_arc(std::string_view u, std::string_view v) { add_arc(index(u), index(v)); }

  void remove_arc(VertexId u, VertexId v) {
    if (!g_.has_arc(u, v)) return;
    detail::clear_bit(row(g_.out_, u), v);
    detail::clear_bit(row(g_.in_, v), u);
    --g_.out_degree_[u];
    --g_.in_degree_[v];
    --g_.arc_count_;
  }

  Digraph build() && { return std::move(g_); }

 private:
  std::span<std::uint64_t> row(std::vector<std::uint64_t>& rows, VertexId v) {
    return {rows.data() + v * g_.words_, g_.words_};
  }

  Digraph g_;
};

inline Digraph::Digraph(std::vector<std::string> vertices,
                        const std::vector<std::pair<std::string, std::string>>& arcs) {
  DigraphBuilder b(std::move(vertices));
  for (const auto& [u, v] : arcs) b.add_arc(u, v);
  *this = std::move(b).build();
}

// Subgraph induced by `keep`; throws on unknown names.
inline Digraph induced_subrelation(const Digraph& g, const std::vector<std::string>& keep) {
  std::vector<VertexId> old_ids;
  old_ids.reserve(keep.size());
  for (const auto& name : keep) old_ids.push_back(g.index(name));
  DigraphBuilder b(keep);
  std::sort(old_ids.begin(), old_ids.end());
  // Sorted names map monotonically onto sorted old ids.
  for (std::size_t i = 0; i < old_ids.size(); ++i)
    for (std::size_t j = 0; j < old_ids.size(); ++j)
      if (i != j && g.has_arc(old_ids[i], old_ids[j])) b.add_arc(i, j);
  return std::move(b).build();
}

// ---------------------------------------------------------------------------
// Triangle patterns.
//
// For an ordered vertex triple (x, y, z) the pattern is a 6-bit mask with
//   bit 0: (x,y)  bit 1: (y,x)  bit 2: (x,z)
//   bit 3: (z,x)  bit 4: (y,z)  bit 5: (z,y)

struct TrianglePattern {
  std::uint8_t mask = 0;

  static constexpr int bit_of(int from, int to) {
    // positions 0,1,2 = x,y,z
    constexpr int table[3][3] = {{-1, 0, 2}, {1, -1, 4}, {3, 5, -1}};
    return table[from][to];
  }

  bool has(int from, int to) const { return (mask >> bit_of(from, to)) & 1U; }

  // Relabels position i as position perm[i].
  TrianglePattern permuted(const std::array<int, 3>& perm) const {
    TrianglePattern out;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (a != b && has(a, b))
          out.mask = static_cast<std::uint8_t>(out.mask | (1U << bit_of(perm[a], perm[b])));
    return out;
  }

  bool operator==(const TrianglePattern&) const = default;
};

inline constexpr std::array<std::array<int, 3>, 6> kTriplePermutations = {
    {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

inline TrianglePattern triangle_pattern(const Digraph& g, VertexId x, VertexId y, VertexId z) {
  const std::array<VertexId, 3> v{x, y, z};
  TrianglePattern p;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (a != b && g.has_arc(v[a], v[b]))
        p.mask = static_cast<std::uint8_t>(p.mask | (1U << TrianglePattern::bit_of(a, b)));
  return p;
}

inline TrianglePattern triangle_pattern(const Digraph& g, std::string_view x, std::string_view y,
                                        std::string_view z) {
  if (x == y || x == z || y == z) throw Error("triangle vertices must be distinct");
  return triangle_pattern(g, g.index(x), g.index(y), g.index(z));
}

enum class TriangleKind { invalid, valid, informative };

struct TriangleClassification {
  TriangleKind kind = TriangleKind::invalid;
  int iso_class = 0;  // 1..16, numbered by smallest member mask
  // Informative triangles only: position (0=x, 1=y, 2=z) of the outlier in
  // the unique explaining triple; the other two form the grouped pair.
  std::optional<int> outlier;

  bool valid() const { return kind != TriangleKind::invalid; }
};

// Classification of all 64 labeled patterns. Validity and informative
// triples are supplied by the caller (see oracle::derive_triangle_catalog);
// the constructor computes isomorphism classes and checks that the supplied
// data is closed under vertex permutation.
class TriangleCatalog {
 public:
  TriangleCatalog(const std::array<bool, 64>& valid,
                  const std::array<std::optional<int>, 64>& outlier) {
    std::array<int, 64> orbit_min{};
    for (int m = 0; m < 64; ++m) {
      int lo = m;
      for (const auto& perm : kTriplePermutations)
        lo = std::min<int>(lo, TrianglePattern{static_cast<std::uint8_t>(m)}.permuted(perm).mask);
      orbit_min[m] = lo;
    }
    std::array<int, 64> class_of_rep{};
    for (int m = 0; m < 64; ++m)
      if (orbit_min[m] == m) class_of_rep[m] = ++class_count_;

    for (int m = 0; m < 64; ++m) {
      TrianglePattern p{static_cast<std::uint8_t>(m)};
      for (const auto& perm : kTriplePermutations) {
        auto q = p.permuted(perm).mask;
        if (valid[q] != valid[m]) throw Error("triangle validity not closed under permutation");
        if (outlier[m].has_value() != outlier[q].has_value() ||
            (outlier[m] && perm[*outlier[m]] != *outlier[q]))
          throw Error("informative triple template not closed under permutation");
      }
      if (outlier[m] && !valid[m]) throw Error("informative triangle must be valid");
      auto& e = entries_[m];
      e.iso_class = class_of_rep[orbit_min[m]];
      e.outlier = outlier[m];
      e.kind = !valid[m] ? TriangleKind::invalid
               : outlier[m] ? TriangleKind::informative
                            : TriangleKind::valid;
      if (orbit_min[m] == m) {
        if (valid[m]) ++valid_classes_;
        if (outlier[m]) ++informative_classes_;
      }
    }
  }

  const TriangleClassification& classify(TrianglePattern p) const { return entries_[p.mask & 63]; }

  int class_count() const { return class_count_; }
  int valid_class_count() const { return valid_classes_; }
  int invalid_class_count() const { return class_count_ - valid_classes_; }
  int informative_class_count() const { return informative_classes_; }

  std::vector<TrianglePattern> members(int iso_class) const {
    std::vector<TrianglePattern> out;
    for (int m = 0; m < 64; ++m)
      if (entries_[m].iso_class == iso_class) out.push_back({static_cast<std::uint8_t>(m)});
    return out;
  }

 private:
  std::array<TriangleClassification, 64> entries_{};
  int class_count_ = 0;
  int valid_classes_ = 0;
  int informative_classes_ = 0;
};

inline TriangleClassification classify_triangle(TrianglePattern p, const TriangleCatalog& cat) {
  return cat.classify(p);
}

struct FitchVerdict {
  // First invalid triple (x < y < z in vertex order), if any.
  std::optional<std::array<VertexId, 3>> witness;

  bool is_fitch() const { return !witness.has_value(); }
  explicit operator bool() const { return is_fitch(); }
};

// O(|V|^3) scan over all induced triangles.
inline FitchVerdict is_fitch(const Digraph& g, const TriangleCatalog& cat) {
  const std::size_t n = g.size();
  for (VertexId x = 0; x < n; ++x)
    for (VertexId y = x + 1; y < n; ++y) {
      const unsigned xy = (g.has_arc(x, y) ? 1U : 0U) | (g.has_arc(y, x) ? 2U : 0U);
      for (VertexId z = y + 1; z < n; ++z) {
        const unsigned mask = xy | (g.has_arc(x, z) ? 4U : 0U) | (g.has_arc(z, x) ? 8U : 0U) |
                              (g.has_arc(y, z) ? 16U : 0U) | (g.has_arc(z, y) ? 32U : 0U);
        if (!cat.classify({static_cast<std::uint8_t>(mask)}).valid())
          return {std::array<VertexId, 3>{x, y, z}};
      }
    }
  return {};
}

}  // namespace fitch
