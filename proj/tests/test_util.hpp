#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fitch/fitch.hpp"

namespace fitch::test {

inline EdgeLabeledTree newick(const std::string& text) { return parse_newick(text); }

inline Digraph graph(std::vector<std::string> vertices,
                     const std::vector<std::pair<std::string, std::string>>& arcs = {}) {
  return Digraph(std::move(vertices), arcs);
}

inline const TriangleCatalog& cat() { return oracle::default_catalog(); }

inline const EdgeLabeledTree& tree_of(const Reconstruction& r) { return std::get<EdgeLabeledTree>(r); }

// Seeded scenario with n in [lo, hi], p cycling through {0, 0.1, 0.5, 1}
// and the topology mode cycling through all four.
inline ScenarioConfig scenario(std::uint64_t i, std::size_t lo, std::size_t hi) {
  static constexpr double probs[] = {0.0, 0.1, 0.5, 1.0};
  static constexpr TopologyMode modes[] = {TopologyMode::binary_yule, TopologyMode::multifurcating,
                                           TopologyMode::caterpillar, TopologyMode::star};
  SplitMix64 rng(0xF17C4 + i);
  ScenarioConfig cfg;
  cfg.leaves = lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
  cfg.hgt_probability = probs[i % 4];
  cfg.mode = modes[(i / 4) % 4];
  cfg.seed = rng.next();
  return cfg;
}

}  // namespace fitch::test
