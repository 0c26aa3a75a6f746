#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fitch/cli.hpp"
#include "test_util.hpp"

namespace fitch {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("fitch_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::filesystem::path dir_;
};

const char* kFan = "V a\nV b\nV c\nA c a\nA c b\n";
const char* kF1 = "V a\nV b\nV c\nA a b\n";

TEST_F(Cli, Check) {
  auto ok = run({"check", file("fan.txt", kFan)});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "FITCH\n");
  auto bad = run({"check", file("f1.txt", kF1)});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.out, "NOT_FITCH a b c\n");
}

TEST_F(Cli, TreeBothRoutesAgree) {
  auto path = file("fan.txt", kFan);
  auto a = run({"tree", path});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, "((a:0,b:0):1,c:0);\n");
  auto b = run({"tree", "--algo", "triples", path});
  auto c = run({"tree", "--algo", "cotree", path});
  EXPECT_EQ(b.out, c.out);
  EXPECT_EQ(b.out, a.out);
  auto bad = run({"tree", file("f1.txt", kF1)});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.out.rfind("NOT_FITCH", 0), 0U);
  EXPECT_EQ(run({"tree", "--algo", "magic", path}).code, 2);
}

TEST_F(Cli, RelationAndReduce) {
  auto rel = run({"relation", file("t.nwk", "((a:0,b:0):1,c:0);\n")});
  EXPECT_EQ(rel.code, 0);
  EXPECT_EQ(rel.out, kFan);
  auto red = run({"reduce", file("r.nwk", "((a:0,b:0):0,c:0);")});
  EXPECT_EQ(red.code, 0);
  EXPECT_EQ(red.out, "(a:0,b:0,c:0);\n");
}

TEST_F(Cli, PipelineClosure) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto g = serialize_graph(random_fitch(test::scenario(i, 2, 30)));
    auto tree = run({"tree", file("g.txt", g)});
    ASSERT_EQ(tree.code, 0);
    auto rel = run({"relation", file("t.nwk", tree.out)});
    EXPECT_EQ(rel.out, g);
    auto once = run({"reduce", file("r1.nwk", serialize_newick(random_tree(test::scenario(i, 2, 30))))});
    auto twice = run({"reduce", file("r2.nwk", once.out)});
    EXPECT_EQ(once.out, twice.out);
  }
}

TEST_F(Cli, Triples) {
  auto r = run({"triples", file("g.txt", "V a\nV b\nV c\nV d\nA c a\nA c b\nA d a\nA d b\nA d c\n")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "a,b|c\na,b|d\na,c|d\nb,c|d\n");
  EXPECT_EQ(run({"triples", file("f1.txt", kF1)}).code, 1);
}

TEST_F(Cli, Edit) {
  auto path = file("f1.txt", kF1);
  auto none = run({"edit", path});
  EXPECT_EQ(none.code, 1);
  EXPECT_EQ(none.out, "INFEASIBLE\n");
  auto del = run({"edit", "--del-arcs", "1", path});
  EXPECT_EQ(del.code, 0);
  EXPECT_EQ(del.out, "DA a b\n");
  auto vert = run({"edit", "--del-vertices", "1", path});
  EXPECT_EQ(vert.code, 0);
  EXPECT_EQ(vert.out.rfind("DV ", 0), 0U);
}

TEST_F(Cli, Oracle) {
  auto r = run({"oracle", "--max-leaves", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("PASS triangle census: 16 classes, 8/8 valid/invalid", 0), 0U);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_EQ(run({"oracle", "--max-leaves", "6"}).code, 2);
}

TEST_F(Cli, GenIsDeterministic) {
  ::unsetenv("FITCH_SEED");
  auto a = run({"gen", "--leaves", "12", "--hgt-prob", "0.3", "--seed", "5", "--emit", "tree"});
  auto b = run({"gen", "--leaves", "12", "--hgt-prob", "0.3", "--seed", "5", "--emit", "tree"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto star = run({"gen", "--leaves", "3", "--hgt-prob", "1", "--mode", "star", "--emit", "tree"});
  EXPECT_EQ(star.out, "(l1:1,l2:1,l3:1);\n");
  auto g = run({"gen", "--leaves", "12", "--hgt-prob", "0.3", "--seed", "5"});
  EXPECT_EQ(parse_graph(g.out), extract_relation(parse_newick(a.out)));
  EXPECT_EQ(run({"gen", "--leaves", "1"}).code, 2);
  EXPECT_EQ(run({"gen", "--leaves", "4", "--hgt-prob", "2"}).code, 2);
}

TEST_F(Cli, SeedFromEnvironment) {
  ::setenv("FITCH_SEED", "5", 1);
  auto env = run({"gen", "--leaves", "12", "--hgt-prob", "0.3", "--seed", "77", "--emit", "tree"});
  ::unsetenv("FITCH_SEED");
  auto flag = run({"gen", "--leaves", "12", "--hgt-prob", "0.3", "--seed", "5", "--emit", "tree"});
  EXPECT_EQ(env.out, flag.out);
  ::setenv("FITCH_SEED", "x", 1);
  EXPECT_EQ(run({"gen", "--leaves", "4"}).code, 2);
  ::unsetenv("FITCH_SEED");
}

TEST_F(Cli, Bench) {
  auto r = run({"bench", "--sizes", "10,20", "--hgt-prob", "0.2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
  auto one = run({"bench", "--sizes", "10", "--algos", "cotree"});
  EXPECT_EQ(std::count(one.out.begin(), one.out.end(), '\n'), 2);
  EXPECT_EQ(run({"bench", "--sizes", "1"}).code, 2);
  EXPECT_EQ(run({"bench", "--sizes", "ten"}).code, 2);
}

TEST_F(Cli, Dot) {
  auto t = run({"dot", file("t.nwk", "((a:0,b:0):1,c:0);")});
  EXPECT_EQ(t.code, 0);
  EXPECT_EQ(t.out.rfind("digraph tree", 0), 0U);
  auto g = run({"dot", file("g.txt", kFan)});
  EXPECT_EQ(g.out.rfind("digraph fitch", 0), 0U);
}

TEST_F(Cli, InputErrors) {
  auto missing = run({"check", (dir_ / "nope.txt").string()});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("cannot open"), std::string::npos);
  auto bad = run({"check", file("bad.txt", "V a\nA a a\n")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("2:5: self-arc"), std::string::npos);
  EXPECT_EQ(run({"relation", file("bad.nwk", "(a:0);")}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

}  // namespace
}  // namespace fitch
