#include <gtest/gtest.h>

#include "test_util.hpp"

namespace fitch {
namespace {

using test::cat;
using test::graph;

const std::vector<std::pair<std::string, std::string>> kFiveArcs = {
    {"c", "a"}, {"c", "b"}, {"d", "a"}, {"d", "b"}, {"d", "c"}};

TEST(Digraph, RejectsMalformedInput) {
  EXPECT_THROW(graph({"a", "b"}, {{"a", "a"}}), Error);
  EXPECT_THROW(graph({"a", "b"}, {{"a", "x"}}), Error);
  EXPECT_THROW(graph({"a", "a"}), Error);
  EXPECT_THROW(graph({"a", ""}), Error);
}

TEST(Digraph, SortedVerticesAndArcs) {
  auto g = graph({"c", "a", "b"}, {{"c", "a"}, {"a", "b"}, {"c", "b"}});
  EXPECT_EQ(g.vertices(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(g.arcs(), (std::vector<std::pair<VertexId, VertexId>>{{0, 1}, {2, 0}, {2, 1}}));
  EXPECT_EQ(g.arc_count(), 3U);
  EXPECT_EQ(g.in_degree(g.index("b")), 2U);
  EXPECT_EQ(g.out_degree(g.index("c")), 2U);
  EXPECT_TRUE(g.has_arc("c", "a"));
  EXPECT_FALSE(g.has_arc("a", "c"));
}

TEST(Digraph, WideGraphsCrossWordBoundaries) {
  std::vector<std::string> names;
  for (int i = 0; i < 130; ++i) names.push_back("v" + std::to_string(1000 + i));
  DigraphBuilder b(names);
  b.add_arc(0, 129);
  b.add_arc(129, 64);
  b.add_arc(63, 64);
  auto g = std::move(b).build();
  EXPECT_TRUE(g.has_arc(0, 129));
  EXPECT_TRUE(g.has_arc(129, 64));
  EXPECT_EQ(g.in_degree(64), 2U);
  EXPECT_EQ(g.arcs().size(), 3U);
}

TEST(TrianglePattern, DirectEncoding) {
  auto g = graph({"a", "b", "c"}, {{"a", "b"}});
  EXPECT_EQ(triangle_pattern(g, "a", "b", "c").mask, 0b000001);
  EXPECT_EQ(triangle_pattern(graph({"a", "b", "c"}), "a", "b", "c").mask, 0);
  // (z,x) is bit 3, (z,y) is bit 5
  auto h = graph({"a", "b", "c"}, {{"c", "a"}, {"c", "b"}});
  EXPECT_EQ(triangle_pattern(h, "a", "b", "c").mask, (1 << 3) | (1 << 5));
}

TEST(TrianglePattern, Errors) {
  auto g = graph({"a", "b", "c"});
  EXPECT_THROW(triangle_pattern(g, "a", "b", "x"), Error);
  EXPECT_THROW(triangle_pattern(g, "a", "a", "c"), Error);
}

TEST(TriangleCatalog, PinnedClassifications) {
  auto single = triangle_pattern(graph({"a", "b", "c"}, {{"a", "b"}}), "a", "b", "c");
  EXPECT_EQ(classify_triangle(single, cat()).kind, TriangleKind::invalid);

  auto twoway = triangle_pattern(graph({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}}), "a", "b", "c");
  EXPECT_EQ(classify_triangle(twoway, cat()).kind, TriangleKind::invalid);

  auto fan = triangle_pattern(graph({"a", "b", "c"}, {{"c", "a"}, {"c", "b"}}), "a", "b", "c");
  auto cls = classify_triangle(fan, cat());
  EXPECT_EQ(cls.kind, TriangleKind::informative);
  ASSERT_TRUE(cls.outlier.has_value());
  EXPECT_EQ(*cls.outlier, 2);  // ab|c

  EXPECT_EQ(classify_triangle({0}, cat()).kind, TriangleKind::valid);
  EXPECT_EQ(classify_triangle({63}, cat()).kind, TriangleKind::valid);
}

TEST(TriangleCatalog, Census) {
  EXPECT_EQ(cat().class_count(), 16);
  EXPECT_EQ(cat().valid_class_count(), 8);
  EXPECT_EQ(cat().invalid_class_count(), 8);
  EXPECT_EQ(cat().informative_class_count(), 4);
  std::size_t members = 0;
  for (int c = 1; c <= 16; ++c) members += cat().members(c).size();
  EXPECT_EQ(members, 64U);
}

TEST(TriangleCatalog, ClosedUnderPermutation) {
  for (int m = 0; m < 64; ++m) {
    TrianglePattern p{static_cast<std::uint8_t>(m)};
    const auto& base = cat().classify(p);
    for (const auto& perm : kTriplePermutations) {
      const auto& moved = cat().classify(p.permuted(perm));
      EXPECT_EQ(base.iso_class, moved.iso_class);
      EXPECT_EQ(base.kind, moved.kind);
      if (base.outlier) {
        EXPECT_EQ(perm[*base.outlier], *moved.outlier);
      }
    }
  }
}

TEST(TriangleCatalog, InconsistentInputIsRejected) {
  std::array<bool, 64> valid{};
  std::array<std::optional<int>, 64> outlier{};
  valid[1] = true;  // {(x,y)} valid but its permutations not
  EXPECT_THROW(TriangleCatalog(valid, outlier), Error);
}

TEST(IsFitch, Examples) {
  EXPECT_TRUE(is_fitch(graph({"a", "b"}, {{"a", "b"}}), cat()));

  auto verdict = is_fitch(graph({"a", "b", "c"}, {{"a", "b"}}), cat());
  ASSERT_FALSE(verdict);
  EXPECT_EQ(*verdict.witness, (std::array<VertexId, 3>{0, 1, 2}));

  EXPECT_TRUE(is_fitch(graph({"a", "b", "c", "d"}, kFiveArcs), cat()));
}

TEST(IsFitch, WitnessIsLexicographicallyFirst) {
  // Only triangles containing both b and d are broken: (a,b,d) comes first.
  auto g = graph({"a", "b", "c", "d"}, {{"b", "d"}});
  auto verdict = is_fitch(g, cat());
  ASSERT_FALSE(verdict);
  EXPECT_EQ(*verdict.witness, (std::array<VertexId, 3>{0, 1, 3}));
}

TEST(IsFitch, WitnessIsInvalidTriangle) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SplitMix64 rng(seed);
    const std::size_t n = 3 + rng.below(5);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    DigraphBuilder b(names);
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = 0; v < n; ++v)
        if (u != v && rng.bernoulli(0.3)) b.add_arc(u, v);
    auto g = std::move(b).build();
    auto verdict = is_fitch(g, cat());
    if (verdict) continue;
    const auto& w = *verdict.witness;
    EXPECT_FALSE(classify_triangle(triangle_pattern(g, w[0], w[1], w[2]), cat()).valid());
  }
}

TEST(InducedSubrelation, Examples) {
  auto g = graph({"a", "b", "c", "d"}, kFiveArcs);
  EXPECT_EQ(induced_subrelation(g, {"a", "b", "c", "d"}), g);

  auto fan = graph({"a", "b", "c"}, {{"c", "a"}, {"c", "b"}});
  EXPECT_EQ(induced_subrelation(fan, {"a", "b"}), graph({"a", "b"}));

  EXPECT_EQ(induced_subrelation(g, {"a", "c", "d"}),
            graph({"a", "c", "d"}, {{"c", "a"}, {"d", "a"}, {"d", "c"}}));
  EXPECT_THROW(induced_subrelation(g, {"a", "z"}), Error);
}

TEST(InducedSubrelation, FitchIsHereditary) {
  for (std::uint64_t i = 0; i < 60; ++i) {
    auto cfg = test::scenario(i, 3, 24);
    auto g = random_fitch(cfg);
    ASSERT_TRUE(is_fitch(g, cat()));
    SplitMix64 rng(i);
    for (int round = 0; round < 5; ++round) {
      std::vector<std::string> keep;
      for (const auto& v : g.vertices())
        if (rng.bernoulli(0.5)) keep.push_back(v);
      EXPECT_TRUE(is_fitch(induced_subrelation(g, keep), cat()));
    }
  }
}

TEST(IsFitch, AgreesWithOracleOnAllFourVertexDigraphs) {
  std::size_t mismatches = 0;
  for (auto key : oracle::all_digraph_keys(4)) {
    auto g = oracle::digraph_from_key(4, key);
    if (is_fitch(g, cat()).is_fitch() != oracle::brute_force_is_valid(g)) ++mismatches;
  }
  EXPECT_EQ(mismatches, 0U);
}

}  // namespace
}  // namespace fitch
