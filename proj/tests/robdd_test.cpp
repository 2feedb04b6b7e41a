// SPDX-License-Identifier: Apache-2.0

#include "edusat/robdd.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "edusat/error.hpp"
#include "edusat/truth_table.hpp"
#include "test_util.hpp"

namespace edusat {
namespace {

using namespace edusat::testing;

std::vector<VarId> vars_upto(std::uint32_t n) {
  std::vector<VarId> out;
  for (std::uint32_t i = 0; i < n; ++i) out.push_back(VarId::make(i));
  return out;
}

std::vector<VarId> reversed(std::vector<VarId> v) {
  std::ranges::reverse(v);
  return v;
}

// Shortest root-to-true paths found by enumerating every path in the diagram.
std::optional<Assignment> path_oracle(const Robdd& d) {
  std::vector<std::vector<std::pair<VarId, bool>>> paths;
  std::vector<std::pair<VarId, bool>> cur;
  auto walk = [&](auto&& self, NodeId id) -> void {
    if (id == kTermTrue) paths.push_back(cur);
    if (Robdd::is_terminal(id)) return;
    for (bool b : {false, true}) {
      cur.emplace_back(d.var(id), b);
      self(self, b ? d.node(id).high : d.node(id).low);
      cur.pop_back();
    }
  };
  walk(walk, d.root());
  if (paths.empty()) return std::nullopt;
  // Enumeration visits low before high, so the first shortest path is the low-preferring one.
  const auto best = std::ranges::min_element(paths, {}, &std::vector<std::pair<VarId, bool>>::size);
  Assignment out;
  for (auto [v, b] : *best) out.set(v, b);
  return out;
}

TEST(BdtTest, Examples) {
  const Bdt single = build_bdt(X(0), vars_upto(1));
  EXPECT_EQ(std::vector(single.leaves().begin(), single.leaves().end()), (std::vector<std::uint8_t>{0, 1}));
  EXPECT_EQ(single.node_count(), 3u);

  const Bdt constant = build_bdt(True(), {});
  EXPECT_EQ(constant.leaves().size(), 1u);
  EXPECT_TRUE(constant.leaf(0));

  const Bdt conj = build_bdt(And(X(0), X(1)), vars_upto(2));
  EXPECT_EQ(std::ranges::count(conj.leaves(), 1), 1);
  EXPECT_TRUE(conj.leaf(0b11));
  EXPECT_EQ(conj.node_count(), 7u);
}

TEST(BdtTest, OrderErrors) {
  EXPECT_THROW(build_bdt(And(X(0), X(1)), vars_upto(1)), OrderError);
  EXPECT_THROW(build_bdt(X(0), {VarId::make(0), VarId::make(0)}), OrderError);
  EXPECT_THROW(build_bdt(X(0), vars_upto(kBdtVarLimit + 1)), TooManyVariables);
  EXPECT_THROW(build_robdd(And(X(0), X(1)), vars_upto(1)), OrderError);
  EXPECT_THROW(build_robdd(Formula::var(VarId(0, Symbol("a"))), vars_upto(1)), OrderError);
}

TEST(ReduceTest, Examples) {
  const Robdd t = reduce(build_bdt(True(), {}));
  EXPECT_EQ(t.root(), kTermTrue);
  EXPECT_EQ(node_count(t), 0u);

  const Robdd contradiction = reduce(build_bdt(And(X(0), Not(X(0))), vars_upto(1)));
  EXPECT_EQ(contradiction.root(), kTermFalse);

  const Robdd eliminated = reduce(build_bdt(X(1), vars_upto(2)));
  EXPECT_EQ(node_count(eliminated), 1u);
  EXPECT_EQ(eliminated.var(eliminated.root()), VarId::make(1));
}

TEST(RobddTest, SingleVariable) {
  const Robdd d = build_robdd(X(0), vars_upto(1));
  EXPECT_EQ(node_count(d), 1u);
  EXPECT_EQ(d.node(d.root()).low, kTermFalse);
  EXPECT_EQ(d.node(d.root()).high, kTermTrue);
}

TEST(RobddTest, ExtraOrderVariablesNeverAppear) {
  const Robdd d = build_robdd(X(2), vars_upto(4));
  EXPECT_EQ(node_count(d), 1u);
  EXPECT_EQ(all_solutions(d).size(), 8u);
}

TEST(RobddTest, PairwiseFormulaBothOrders) {
  const Formula f = pairwise_formula();
  const auto forward = vars_upto(8);
  const auto backward = reversed(forward);
  const std::size_t expected = subfunction_oracle(f, forward);
  ASSERT_EQ(expected, 8u);
  ASSERT_EQ(subfunction_oracle(f, backward), 8u);

  for (const auto& order : {forward, backward}) {
    const Robdd direct = build_robdd(f, order);
    const Robdd textbook = reduce(build_bdt(f, order));
    EXPECT_EQ(direct, textbook);
    EXPECT_EQ(node_count(direct), 8u);
    EXPECT_TRUE(well_formed(direct));
  }
}

TEST(RobddTest, InterleavedOrderBlowsUp) {
  // Separating the pairs forces the diagram to remember the first half.
  const Formula f = pairwise_formula();
  const std::vector order{VarId::make(0), VarId::make(2), VarId::make(4), VarId::make(6),
                          VarId::make(1), VarId::make(3), VarId::make(5), VarId::make(7)};
  EXPECT_EQ(node_count(build_robdd(f, order)), subfunction_oracle(f, order));
  EXPECT_GT(node_count(build_robdd(f, order)), 8u);
}

TEST(RobddTest, NodeCountMatchesSubfunctionOracle) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Formula f = random_formula(1 + seed % 7, 1 + seed % 8, seed);
    const auto order = (seed & 1) ? reversed(free_vars(f)) : free_vars(f);
    EXPECT_EQ(node_count(build_robdd(f, order)), subfunction_oracle(f, order)) << render(f);
  }
}

TEST(RobddTest, DirectMatchesReduction) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Formula f = random_formula(1 + seed % 12, seed % 9, seed);
    auto order = free_vars(f);
    if (seed % 3 == 0) order = reversed(order);
    const Robdd direct = build_robdd(f, order);
    const Robdd textbook = reduce(build_bdt(f, order));
    EXPECT_TRUE(well_formed(direct));
    EXPECT_TRUE(well_formed(textbook));
    EXPECT_EQ(direct, textbook) << render(f);
    EXPECT_EQ(canonical_form(direct), canonical_form(textbook));
  }
}

TEST(RobddTest, CanonicalUnderEquivalence) {
  // Syntactically different, semantically equal.
  const auto order = vars_upto(3);
  const Formula a = Not(And(X(0), Or(X(1), X(2))));
  const Formula b = Or(Not(X(0)), And(Not(X(1)), Not(X(2))));
  EXPECT_EQ(build_robdd(a, order), build_robdd(b, order));
  EXPECT_FALSE(build_robdd(a, order) == build_robdd(Or(Not(X(0)), Not(X(1))), order));
  EXPECT_FALSE(build_robdd(True(), {}) == build_robdd(False(), {}));
}

TEST(SolutionsTest, AllSolutions) {
  EXPECT_TRUE(all_solutions(build_robdd(False(), {})).empty());
  EXPECT_EQ(all_solutions(build_robdd(Or(X(0), X(1)), vars_upto(2))).size(), 3u);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Formula f = random_formula(5, seed % 9, seed);
    EXPECT_EQ(all_solutions(build_robdd(f, free_vars(f))), truth_table(f).true_rows());
  }
}

TEST(SolutionsTest, SingleSolutionExamples) {
  Assignment x0;
  x0.set(0, true);
  EXPECT_EQ(single_solution(build_robdd(X(0), vars_upto(1))), x0);

  Assignment expected;
  expected.set(0, false);
  expected.set(2, true);
  const Robdd d = build_robdd(Or(And(X(0), X(1)), X(2)), vars_upto(3));
  EXPECT_EQ(single_solution(d), expected);
  EXPECT_EQ(path_oracle(d), expected);

  EXPECT_EQ(single_solution(build_robdd(True(), {})), Assignment{});
  EXPECT_EQ(single_solution(build_robdd(False(), {})), std::nullopt);
}

TEST(SolutionsTest, SingleSolutionIsShortestAndSound) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Formula f = random_formula(1 + seed % 7, seed % 9, seed);
    const Robdd d = build_robdd(f, free_vars(f));
    const auto path = single_solution(d);
    ASSERT_EQ(path, path_oracle(d)) << render(f);
    if (!path) continue;
    for (Assignment a : expand_cube(*path, d.order())) EXPECT_TRUE(evaluate(f, a));
  }
}

TEST(DotTest, Examples) {
  EXPECT_EQ(to_dot(build_robdd(True(), {})), "digraph robdd {\n  n1 [label=\"1\", shape=box];\n}\n");
  EXPECT_EQ(to_dot(build_robdd(X(0), vars_upto(1))),
            "digraph robdd {\n"
            "  n0 [label=\"0\", shape=box];\n"
            "  n1 [label=\"1\", shape=box];\n"
            "  n2 [label=\"x0\", shape=circle];\n"
            "  n2 -> n0 [style=dashed];\n"
            "  n2 -> n1 [style=solid];\n"
            "}\n");
}

TEST(DotTest, PairwiseFormula) {
  for (const auto& order : {vars_upto(8), reversed(vars_upto(8))}) {
    const std::string dot = to_dot(build_robdd(pairwise_formula(), order));
    auto count = [&](std::string_view needle) {
      std::size_t n = 0;
      for (auto pos = dot.find(needle); pos != std::string::npos; pos = dot.find(needle, pos + 1)) ++n;
      return n;
    };
    EXPECT_EQ(count("shape=circle"), 8u);
    EXPECT_EQ(count("shape=box"), 2u);
    EXPECT_EQ(count("style=dashed"), 8u);
    EXPECT_EQ(count("style=solid"), 8u);
  }
}

TEST(SolveRobddTest, AgreesWithDpll) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Formula f = random_formula(3 + seed % 3, 3 + seed % 6, seed);
    const auto dpll = solve_dpll(f, SolveMode::All).result.models;
    EXPECT_EQ(solve_robdd(f, SolveMode::All).result.models, dpll);
    EXPECT_EQ(solve_robdd(f, SolveMode::All, BddConstruction::Direct).result.models, dpll);
    const RobddOutcome single = solve_robdd(f, SolveMode::Single);
    EXPECT_EQ(single.result.sat(), !dpll.empty());
    if (single.result.sat()) EXPECT_TRUE(evaluate(f, single.result.models[0]));
  }
}

}  // namespace
}  // namespace edusat
