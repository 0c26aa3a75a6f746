#include <gtest/gtest.h>

#include "test_util.hpp"

namespace fitch {
namespace {

using test::cat;

ScenarioConfig config(std::size_t n, double p, TopologyMode mode, std::uint64_t seed = 1) {
  ScenarioConfig c;
  c.leaves = n;
  c.hgt_probability = p;
  c.mode = mode;
  c.seed = seed;
  return c;
}

TEST(SplitMix64, ReferenceVector) {
  SplitMix64 rng(1234567);
  const std::uint64_t expected[] = {6457827717110365317ULL, 3203168211198807973ULL, 9817491932198370423ULL,
                                    4593380528125082431ULL, 16408922859458223821ULL};
  for (auto e : expected) EXPECT_EQ(rng.next(), e);
}

TEST(SplitMix64, BoundedDraws) {
  SplitMix64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_LT(rng.below(13), 13U);
    const double u = rng.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  EXPECT_FALSE(rng.bernoulli(0.0));
  EXPECT_TRUE(rng.bernoulli(1.0));
}

TEST(TopologyMode, Names) {
  EXPECT_EQ(parse_topology_mode("yule"), TopologyMode::binary_yule);
  EXPECT_EQ(parse_topology_mode("binary-yule"), TopologyMode::binary_yule);
  EXPECT_EQ(parse_topology_mode("random-multifurcating"), TopologyMode::multifurcating);
  EXPECT_EQ(parse_topology_mode("star"), TopologyMode::star);
  EXPECT_THROW(parse_topology_mode("bush"), Error);
}

TEST(RandomTree, Validation) {
  EXPECT_THROW(random_tree(config(1, 0.1, TopologyMode::star)), Error);
  EXPECT_THROW(random_tree(config(5, 1.5, TopologyMode::star)), Error);
  EXPECT_THROW(random_tree(config(5, -0.1, TopologyMode::star)), Error);
}

TEST(RandomTree, Examples) {
  auto zero = random_tree(config(20, 0.0, TopologyMode::binary_yule));
  EXPECT_EQ(extract_relation(zero).arc_count(), 0U);

  auto star = random_tree(config(3, 1.0, TopologyMode::star));
  EXPECT_EQ(serialize_newick(star), "(l1:1,l2:1,l3:1);");
  EXPECT_EQ(extract_relation(star).arc_count(), 6U);

  auto cfg = config(40, 0.3, TopologyMode::multifurcating, 99);
  EXPECT_EQ(serialize_newick(random_tree(cfg)), serialize_newick(random_tree(cfg)));
  cfg.seed = 100;
  EXPECT_NE(serialize_newick(random_tree(cfg)), serialize_newick(random_tree(config(40, 0.3, TopologyMode::multifurcating, 99))));
}

TEST(RandomTree, ShapesPerMode) {
  for (std::size_t n : {2, 3, 7, 30}) {
    auto yule = random_tree(config(n, 0.5, TopologyMode::binary_yule, n));
    auto multi = random_tree(config(n, 0.5, TopologyMode::multifurcating, n));
    auto cater = random_tree(config(n, 0.5, TopologyMode::caterpillar, n));
    auto star = random_tree(config(n, 0.5, TopologyMode::star, n));
    for (const auto* t : {&yule, &multi, &cater, &star}) {
      EXPECT_EQ(t->leaf_count(), n);
      EXPECT_TRUE(t->is_phylogenetic());
    }
    EXPECT_EQ(yule.size(), 2 * n - 1);
    EXPECT_EQ(cater.size(), 2 * n - 1);
    EXPECT_EQ(star.size(), n + 1);
    auto depth = cater.depths();
    EXPECT_EQ(*std::max_element(depth.begin(), depth.end()), n - 1);
  }
}

TEST(RandomFitch, AlwaysFitch) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto g = random_fitch(test::scenario(i, 2, 60));
    EXPECT_TRUE(is_fitch(g, cat()));
  }
  EXPECT_EQ(random_fitch(config(10, 0.0, TopologyMode::caterpillar)).arc_count(), 0U);
}

TEST(Bench, AgreementAndShape) {
  ScenarioConfig tmpl = config(2, 0.3, TopologyMode::binary_yule, 5);
  auto rows = bench({50}, tmpl, cat());
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_EQ(rows[0].algo, "triples");
  EXPECT_EQ(rows[1].algo, "cotree");
  EXPECT_EQ(rows[0].tree_vertices, rows[1].tree_vertices);
  EXPECT_TRUE(bench({}, tmpl, cat()).empty());

  BenchOptions only;
  only.cotree = false;
  auto tri = bench({10, 20}, tmpl, cat(), only);
  ASSERT_EQ(tri.size(), 2U);
  EXPECT_EQ(tri[1].algo, "triples");

  auto csv = bench_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,algo,ms,tree_vertices");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

}  // namespace
}  // namespace fitch
