// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "edusat/formula.hpp"
#include "edusat/npc.hpp"
#include "edusat/smt.hpp"

namespace edusat {
namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("edusat_cli_" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }

  std::string file(const std::string& name, const std::string& body = "") const {
    const auto p = path_ / name;
    if (!body.empty()) std::ofstream(p) << body;
    return p.string();
  }

 private:
  std::filesystem::path path_;
};

const char* const kPairwise = "(x0 and x1) or (x2 and x3) or (x4 and x5) or (x6 and x7)";

TEST(CliSolveTest, Contradiction) {
  const CliRun r = cli({"solve", "-e", "dpll", "x0 and not x0"});
  EXPECT_EQ(r.code, cli::kUnsat);
  EXPECT_NE(r.out.find("UNSAT"), std::string::npos);
}

TEST(CliSolveTest, AllEnginesAllModels) {
  const CliRun r = cli({"solve", "-e", "all", "-m", "all", "x0 or x1"});
  EXPECT_EQ(r.code, cli::kSat);
  EXPECT_NE(r.out.find("agreement: true"), std::string::npos);
  for (const char* engine : {"[naive]", "[dpll]", "[robdd]"}) {
    const auto at = r.out.find(engine);
    ASSERT_NE(at, std::string::npos) << engine;
    EXPECT_EQ(r.out.compare(r.out.find("models=", at), 8, "models=3"), 0) << engine;
  }
}

TEST(CliSolveTest, RobddWithReversedOrder) {
  const CliRun r = cli({"solve", "-e", "robdd", "--order", "x7,x6,x5,x4,x3,x2,x1,x0", kPairwise});
  EXPECT_EQ(r.code, cli::kSat);
  const auto out = lines(r.out);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].rfind("[robdd] SAT", 0), 0u);
}

TEST(CliSolveTest, JsonLinesHaveFixedKeys) {
  const CliRun r = cli({"solve", "--format", "json", "-e", "all", "-m", "all", "x0 or not x1"});
  EXPECT_EQ(r.code, cli::kSat);
  const auto out = lines(r.out);
  ASSERT_EQ(out.size(), 3u);
  for (const std::string& line : out) {
    const auto obj = nlohmann::json::parse(line);
    std::vector<std::string> keys;
    for (const auto& [k, v] : obj.items()) keys.push_back(k);
    std::ranges::sort(keys);
    EXPECT_EQ(keys, (std::vector<std::string>{"engine", "models", "time_s", "verdict"}));
    EXPECT_EQ(obj["verdict"], "SAT");
    EXPECT_EQ(obj["models"].size(), 3u);
  }
  EXPECT_NE(r.err.find("agreement: true"), std::string::npos);
}

TEST(CliSolveTest, PrintedModelsSatisfyTheFormula) {
  const std::string text = "(a or not b) and (b or c) and not (a and c)";
  const CliRun r = cli({"solve", "--format", "json", "-e", "all", "-m", "all", text});
  const Formula f = parse(text);
  const auto vars = free_vars(f);
  for (const std::string& line : lines(r.out)) {
    for (const auto& m : nlohmann::json::parse(line)["models"]) {
      Assignment a;
      for (const VarId& v : vars) a.set(v, m.at(v.name.str()).get<bool>());
      EXPECT_TRUE(evaluate(f, a)) << line;
    }
  }
}

TEST(CliSolveTest, DimacsFile) {
  TempDir dir;
  const std::string path = dir.file("two.cnf", "p cnf 2 2\n1 2 0\n-1 0\n");
  const CliRun r = cli({"solve", "-f", path, "-m", "all"});
  EXPECT_EQ(r.code, cli::kSat);
  EXPECT_NE(r.out.find("models=1"), std::string::npos);
}

TEST(CliSolveTest, UsageAndParseErrors) {
  EXPECT_EQ(cli({"solve", "x0 and"}).code, cli::kUsage);
  EXPECT_EQ(cli({"solve", "-e", "cdcl", "x0"}).code, cli::kUsage);
  EXPECT_EQ(cli({"solve"}).code, cli::kUsage);
  EXPECT_EQ(cli({"solve", "-e", "robdd", "--order", "x0", "x0 and x1"}).code, cli::kUsage);
  EXPECT_EQ(cli({"solve", "-e", "robdd", "--order", "x0,y", "x0"}).code, cli::kUsage);
  EXPECT_EQ(cli({}).code, cli::kUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(CliSmtTest, SingleModel) {
  const CliRun r = cli({"smt", "x > 3 and x < 5", "--bounds", "x=0..10"});
  EXPECT_EQ(r.code, cli::kSat);
  EXPECT_EQ(lines(r.out), (std::vector<std::string>{"SAT", "x = 4"}));
}

TEST(CliSmtTest, UnsatInRange) {
  const CliRun r = cli({"smt", "x < 0", "--bounds", "x=0..10"});
  EXPECT_EQ(r.code, cli::kUnsat);
  EXPECT_EQ(lines(r.out).front(), "UNSAT_IN_RANGE");
}

TEST(CliSmtTest, MinConflictsGivesUpAsUnknown) {
  const CliRun r = cli({"smt", "x < 0", "--bounds", "x=0..10", "--method", "minconflicts", "--max-steps", "1"});
  EXPECT_EQ(r.code, cli::kUnknown);
  EXPECT_EQ(lines(r.out).front(), "UNKNOWN");
}

TEST(CliSmtTest, AllModelsAsJson) {
  const CliRun r = cli({"smt", "x + y = 3", "--bounds", "x=0..3,y=0..3", "-m", "all", "--format", "json"});
  EXPECT_EQ(r.code, cli::kSat);
  const auto obj = nlohmann::json::parse(r.out);
  EXPECT_EQ(obj["engine"], "backtracking");
  ASSERT_EQ(obj["models"].size(), 4u);
  for (const auto& m : obj["models"]) EXPECT_EQ(m["x"].get<int>() + m["y"].get<int>(), 3);
}

TEST(CliSmtTest, MissingBoundsIsUsageError) {
  EXPECT_EQ(cli({"smt", "x < y", "--bounds", "x=0..10"}).code, cli::kUsage);
  EXPECT_EQ(cli({"smt", "x < 3"}).code, cli::kUsage);
  EXPECT_EQ(cli({"smt", "x <", "--bounds", "x=0..1"}).code, cli::kUsage);
}

TEST(CliSmtTest, SeedFromEnvironment) {
  const std::vector<std::string> args{"smt", "x * x = 49", "--bounds", "x=-10..10", "--method", "minconflicts"};
  ::setenv("EDUSAT_SEED", "3", 1);
  const CliRun env = cli(args);
  ::unsetenv("EDUSAT_SEED");
  auto explicit_args = args;
  explicit_args.insert(explicit_args.end(), {"--seed", "3"});
  const CliRun flag = cli(explicit_args);
  EXPECT_EQ(env.out, flag.out);
  ::setenv("EDUSAT_SEED", "three", 1);
  EXPECT_EQ(cli(args).code, cli::kUsage);
  ::unsetenv("EDUSAT_SEED");
}

TEST(CliNpcTest, FourQueensHasTwoPlacements) {
  const CliRun r = cli({"npc", "nqueens", "4", "--mode", "all"});
  EXPECT_EQ(r.code, cli::kSat);
  EXPECT_EQ(lines(r.out).front(), "SAT  solutions=2");
}

TEST(CliNpcTest, TriangleIsNotTwoColorable) {
  TempDir dir;
  const CliRun r = cli({"npc", "coloring", dir.file("triangle.txt", "3 3 2\n0 1\n1 2\n0 2\n")});
  EXPECT_EQ(r.code, cli::kUnsat);
}

TEST(CliNpcTest, MinConflictsPlacementValidates) {
  const CliRun r = cli({"npc", "nqueens", "8", "--method", "minconflicts", "--seed", "7", "--format", "json"});
  ASSERT_TRUE(r.code == cli::kSat || r.code == cli::kUnknown) << r.err;
  const auto obj = nlohmann::json::parse(r.out);
  const Instance inst = NQueensInstance{8};
  for (const auto& m : obj["models"]) EXPECT_TRUE(validate(inst, decode(inst, m.get<IntModel>())));
}

TEST(CliNpcTest, MalformedInstance) {
  EXPECT_EQ(cli({"npc", "nqueens", "four"}).code, cli::kUsage);
  EXPECT_EQ(cli({"npc", "knapsack", "4"}).code, cli::kUsage);
}

TEST(CliGenTest, DeterministicPerSeed) {
  TempDir dir;
  const std::string a = dir.file("a.txt"), b = dir.file("b.txt");
  EXPECT_EQ(cli({"gen", "bool", "-n", "5", "-d", "8", "-c", "3", "--seed", "1", "--out", a}).code, 0);
  EXPECT_EQ(cli({"gen", "bool", "-n", "5", "-d", "8", "-c", "3", "--seed", "1", "--out", b}).code, 0);
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_EQ(lines(sa.str()).size(), 3u);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(CliGenTest, DepthZeroGivesIdentifiers) {
  for (const std::string& line : lines(cli({"gen", "bool", "-d", "0", "-c", "20"}).out)) {
    const Formula f = parse(line);
    EXPECT_EQ(f.kind(), Kind::Var) << line;
  }
}

TEST(CliGenTest, LinesReparse) {
  for (const std::string& line : lines(cli({"gen", "bool", "-n", "4", "-d", "5", "-c", "30", "--seed", "9"}).out))
    EXPECT_EQ(render(parse(line)), line);
  for (const std::string& line : lines(cli({"gen", "smt", "-n", "3", "-d", "2", "-c", "30", "--seed", "9"}).out))
    EXPECT_EQ(render(parse_smt(line)), line);
}

TEST(CliGenTest, BadConfig) { EXPECT_EQ(cli({"gen", "bool", "-n", "0"}).code, cli::kUsage); }

TEST(CliVizTest, PairwiseFormulaHasEightNodes) {
  TempDir dir;
  const std::string dot = dir.file("pairwise.dot");
  const CliRun r = cli({"viz", kPairwise, "--order", "x0,x1,x2,x3,x4,x5,x6,x7", "-o", dot});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.err, "nodes: 8\n");
  std::ifstream in(dot);
  std::stringstream body;
  body << in.rdbuf();
  EXPECT_EQ(body.str().rfind("digraph robdd {", 0), 0u);
}

TEST(CliVizTest, TrueIsOneTerminal) {
  const CliRun r = cli({"viz", "true"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "digraph robdd {\n  n1 [label=\"1\", shape=box];\n}\n");
  EXPECT_EQ(r.err, "nodes: 0\n");
}

TEST(CliVizTest, OrderMissingVariable) {
  EXPECT_EQ(cli({"viz", "x0 and x1", "--order", "x0"}).code, cli::kUsage);
}

TEST(CliBenchTest, DpllTableRows) {
  const CliRun r = cli({"bench", "dpll", "--counts", "10,20,30", "-n", "5", "-d", "8", "--mode", "single"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto out = lines(r.out);
  ASSERT_EQ(out.size(), 4u);
  for (std::size_t i = 1; i < out.size(); ++i) EXPECT_EQ(out[i].substr(out[i].size() - 6), "100.0%");
}

TEST(CliBenchTest, RobddRowAsJson) {
  const CliRun r = cli({"bench", "robdd", "--counts", "10", "-n", "5", "-d", "7", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto obj = nlohmann::json::parse(r.out);
  EXPECT_EQ(obj["formulas"], 10);
  EXPECT_EQ(obj["vars"], 5);
  EXPECT_EQ(obj["depth"], 7);
  EXPECT_EQ(obj["single_accuracy"], 1.0);
  EXPECT_EQ(obj["multiple_accuracy"], 1.0);
}

TEST(CliBenchTest, ParallelOutputMatchesSerialApartFromTimes) {
  auto strip_times = [](std::string text) {
    auto obj = nlohmann::json::parse(text);
    obj.erase("naive_s");
    obj.erase("dpll_s");
    return obj.dump();
  };
  const std::vector<std::string> args{"bench", "dpll", "--counts", "50", "-n", "4", "-d", "6", "--format", "json"};
  auto par = args;
  par.push_back("--parallel");
  EXPECT_EQ(strip_times(cli(args).out), strip_times(cli(par).out));
}

}  // namespace
}  // namespace edusat
