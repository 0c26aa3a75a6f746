#pragma once

// Exhaustive cross-check of the recognition and reconstruction code
// against the brute-force oracle on every digraph with few vertices.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "fitch/cotree.hpp"
#include "fitch/digraph.hpp"
#include "fitch/oracle.hpp"
#include "fitch/tree.hpp"
#include "fitch/triples.hpp"

namespace fitch::oracle {

struct CensusLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Digraph on vertices a, b, c, ... whose arcs are the set bits of `key`
// (bit u*n+v for u->v; diagonal bits ignored).
inline Digraph digraph_from_key(std::size_t n, std::uint32_t key) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.emplace_back(1, static_cast<char>('a' + i));
  DigraphBuilder b(names);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = 0; v < n; ++v)
      if (u != v && ((key >> (u * n + v)) & 1U)) b.add_arc(u, v);
  return std::move(b).build();
}

// Off-diagonal arc keys of all digraphs on n vertices.
inline std::vector<std::uint32_t> all_digraph_keys(std::size_t n) {
  std::vector<std::uint32_t> slots;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v) slots.push_back(static_cast<std::uint32_t>(u * n + v));
  std::vector<std::uint32_t> keys;
  keys.reserve(std::size_t{1} << slots.size());
  for (std::uint32_t m = 0; m < (1U << slots.size()); ++m) {
    std::uint32_t key = 0;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if ((m >> i) & 1U) key |= std::uint32_t{1} << slots[i];
    keys.push_back(key);
  }
  return keys;
}

inline CensusLine triangle_census(const TriangleCatalog& cat) {
  const auto invalid = [&](std::uint8_t mask) { return !cat.classify({mask}).valid(); };
  // {(x,y)}, {(x,y),(y,x)}, {(x,y),(y,x),(x,z),(y,z)}
  const bool pinned = invalid(0b000001) && invalid(0b000011) && invalid(0b010111);
  CensusLine line{"triangle census", false, ""};
  line.detail = std::to_string(cat.class_count()) + " classes, " + std::to_string(cat.valid_class_count()) + "/" +
                std::to_string(cat.invalid_class_count()) + " valid/invalid, " +
                std::to_string(cat.informative_class_count()) + " informative";
  line.pass = cat.class_count() == 16 && cat.valid_class_count() == 8 && cat.invalid_class_count() == 8 &&
              cat.informative_class_count() == 4 && pinned;
  return line;
}

// is_fitch versus brute-force validity on every digraph with n vertices.
inline CensusLine recognition_census(std::size_t n, const TriangleCatalog& cat) {
  std::size_t checked = 0, mismatches = 0, valid = 0;
  for (auto key : all_digraph_keys(n)) {
    const auto g = digraph_from_key(n, key);
    const bool brute = brute_force_is_valid(g);
    valid += brute ? 1 : 0;
    if (is_fitch(g, cat).is_fitch() != brute) ++mismatches;
    ++checked;
  }
  return {"recognition n=" + std::to_string(n), mismatches == 0,
          std::to_string(checked) + " digraphs, " + std::to_string(valid) + " valid, " +
              std::to_string(mismatches) + " mismatches"};
}

// For one valid digraph: a unique vertex-minimum explaining tree that both
// pipelines reproduce.
inline bool unique_minimum_agrees(const Digraph& g, const TriangleCatalog& cat) {
  const auto best = brute_force_min_tree(g);
  if (best.size() != 1) return false;
  const auto expected = canonical_form(best.front());
  const auto a = tree_from_triples(g, cat);
  const auto b = tree_from_cotree(g);
  return std::holds_alternative<EdgeLabeledTree>(a) && std::holds_alternative<EdgeLabeledTree>(b) &&
         canonical_form(std::get<EdgeLabeledTree>(a)) == expected &&
         canonical_form(std::get<EdgeLabeledTree>(b)) == expected;
}

inline CensusLine uniqueness_census(std::size_t n, const TriangleCatalog& cat) {
  std::size_t checked = 0, failures = 0;
  for (auto key : all_digraph_keys(n)) {
    const auto g = digraph_from_key(n, key);
    if (!brute_force_is_valid(g)) continue;
    ++checked;
    if (!unique_minimum_agrees(g, cat)) ++failures;
  }
  return {"uniqueness n=" + std::to_string(n), failures == 0,
          std::to_string(checked) + " valid relations, " + std::to_string(failures) + " failures"};
}

inline std::vector<CensusLine> run_census(std::size_t max_leaves, const TriangleCatalog& cat) {
  std::vector<CensusLine> lines{triangle_census(cat)};
  for (std::size_t n = 2; n <= max_leaves; ++n) lines.push_back(recognition_census(n, cat));
  for (std::size_t n = 2; n <= max_leaves; ++n) lines.push_back(uniqueness_census(n, cat));
  return lines;
}

}  // namespace fitch::oracle
