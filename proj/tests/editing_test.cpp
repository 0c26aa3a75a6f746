#include <gtest/gtest.h>

#include "test_util.hpp"

namespace fitch {
namespace {

using test::cat;
using test::graph;

const auto kF1 = [] { return graph({"a", "b", "c"}, {{"a", "b"}}); };

TEST(ApplyEdits, ArcsThenVertices) {
  auto g = graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  EditSolution s;
  s.deleted_arcs = {{"a", "b"}};
  s.inserted_arcs = {{"c", "a"}};
  s.deleted_vertices = {"b"};
  EXPECT_EQ(apply_edits(g, s), graph({"a", "c"}, {{"c", "a"}}));
}

TEST(ApplyEdits, RejectsInconsistentScripts) {
  auto g = kF1();
  EditSolution del;
  del.deleted_arcs = {{"b", "a"}};
  EXPECT_THROW(apply_edits(g, del), Error);
  EditSolution ins;
  ins.inserted_arcs = {{"a", "b"}};
  EXPECT_THROW(apply_edits(g, ins), Error);
  EditSolution twice;
  twice.deleted_vertices = {"a", "a"};
  EXPECT_THROW(apply_edits(g, twice), Error);
}

TEST(SolveModification, FitchInputNeedsNoEdits) {
  auto g = graph({"a", "b", "c"}, {{"c", "a"}, {"c", "b"}});
  auto s = solve_modification(g, {2, 2, 2}, cat());
  ASSERT_TRUE(s);
  EXPECT_TRUE(s->empty());
}

TEST(SolveModification, SingleArcDeletion) {
  auto s = solve_modification(kF1(), {0, 1, 0}, cat());
  ASSERT_TRUE(s);
  EXPECT_EQ(s->deleted_arcs, (std::vector<std::pair<std::string, std::string>>{{"a", "b"}}));
  EXPECT_TRUE(s->inserted_arcs.empty());
}

TEST(SolveModification, SingleArcInsertion) {
  auto s = solve_modification(kF1(), {0, 0, 1}, cat());
  ASSERT_TRUE(s);
  ASSERT_EQ(s->inserted_arcs.size(), 1U);
  EXPECT_TRUE(is_fitch(apply_edits(kF1(), *s), cat()));
  // The fan-out a->b, a->c is one valid repair.
  EXPECT_TRUE(is_fitch(graph({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}}), cat()));
}

TEST(SolveModification, VertexDeletion) {
  auto f5 = graph({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}});
  auto s = solve_modification(f5, {1, 0, 0}, cat());
  ASSERT_TRUE(s);
  EXPECT_EQ(s->deleted_vertices.size(), 1U);
  EXPECT_TRUE(is_fitch(apply_edits(f5, *s), cat()));
  EXPECT_TRUE(brute_force_modification(f5, {1, 0, 0}, cat()));
}

TEST(SolveModification, Infeasible) {
  EXPECT_FALSE(solve_modification(kF1(), {0, 0, 0}, cat()));
  EXPECT_FALSE(brute_force_modification(kF1(), {0, 0, 0}, cat()));
  auto empty = brute_force_modification(graph({"a", "b", "c"}), {0, 0, 0}, cat());
  ASSERT_TRUE(empty);
  EXPECT_TRUE(empty->empty());
}

TEST(BruteForceModification, Guard) {
  EXPECT_THROW(brute_force_modification(graph({"a", "b", "c", "d", "e"}), {0, 0, 0}, cat()), Error);
  EXPECT_THROW(brute_force_modification(kF1(), {2, 1, 1}, cat()), Error);
}

// Every digraph on 3 vertices and every budget with at most 2 edits.
TEST(SolveModification, MatchesBruteForceOnThreeVertices) {
  std::size_t mismatches = 0;
  for (auto key : oracle::all_digraph_keys(3)) {
    auto g = oracle::digraph_from_key(3, key);
    for (std::size_t i = 0; i <= 2; ++i)
      for (std::size_t j = 0; i + j <= 2; ++j)
        for (std::size_t k = 0; i + j + k <= 2; ++k) {
          const EditBudget b{i, j, k};
          auto fast = solve_modification(g, b, cat());
          auto slow = brute_force_modification(g, b, cat());
          if (fast.has_value() != slow.has_value()) ++mismatches;
          if (fast) {
            EXPECT_TRUE(fast->fits(b));
            EXPECT_TRUE(is_fitch(apply_edits(g, *fast), cat()));
          }
        }
  }
  EXPECT_EQ(mismatches, 0U);
}

TEST(SolveModification, LargerGraphsAreRepaired) {
  for (std::uint64_t i = 0; i < 30; ++i) {
    auto g = random_fitch(test::scenario(i, 6, 14));
    // Break it with one flipped arc.
    SplitMix64 rng(i);
    VertexId u = rng.below(g.size()), v = rng.below(g.size() - 1);
    if (v >= u) ++v;
    DigraphBuilder b(g.vertices());
    for (auto [x, y] : g.arcs()) b.add_arc(x, y);
    if (g.has_arc(u, v))
      b.remove_arc(u, v);
    else
      b.add_arc(u, v);
    auto broken = std::move(b).build();
    auto s = solve_modification(broken, {0, 1, 1}, cat());
    ASSERT_TRUE(s);
    EXPECT_TRUE(is_fitch(apply_edits(broken, *s), cat()));
  }
}

}  // namespace
}  // namespace fitch
