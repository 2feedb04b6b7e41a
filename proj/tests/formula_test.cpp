// SPDX-License-Identifier: Apache-2.0

#include "edusat/formula.hpp"

#include <gtest/gtest.h>

#include "edusat/error.hpp"
#include "test_util.hpp"

namespace edusat {
namespace {

using namespace edusat::testing;

Assignment assign(std::initializer_list<std::pair<std::uint32_t, bool>> values) {
  Assignment a;
  for (auto [i, v] : values) a.set(VarId::make(i), v);
  return a;
}

bool contains_var(const Formula& f, std::uint32_t index) {
  if (f.kind() == Kind::Var) return f.var().index == index;
  for (const Formula& c : f.children())
    if (contains_var(c, index)) return true;
  return false;
}

bool constant_below_root(const Formula& f) {
  for (const Formula& c : f.children())
    if (c.is_const() || constant_below_root(c)) return true;
  return false;
}

//===----------------------------------------------------------------------===//
// parse / render
//===----------------------------------------------------------------------===//

TEST(ParseTest, AndWithNegation) { EXPECT_EQ(parse("x0 and not x1"), And(X(0), Not(X(1)))); }

TEST(ParseTest, Constant) {
  EXPECT_EQ(parse("true"), True());
  EXPECT_EQ(parse("false"), False());
}

TEST(ParseTest, PairwiseFormula) {
  const Formula f = parse("(x0 and x1) or (x2 and x3) or (x4 and x5) or (x6 and x7)");
  EXPECT_EQ(f, pairwise_formula());
  EXPECT_EQ(f.kind(), Kind::Or);
  EXPECT_EQ(f.children().size(), 4u);
}

TEST(ParseTest, Precedence) {
  EXPECT_EQ(parse("x0 or x1 and x2"), Or(X(0), And(X(1), X(2))));
  EXPECT_EQ(parse("not x0 and x1"), And(Not(X(0)), X(1)));
  EXPECT_EQ(parse("not (x0 and x1)"), Not(And(X(0), X(1))));
  EXPECT_EQ(parse("not not x0"), Not(Not(X(0))));
}

TEST(ParseTest, ExplicitNestingIsKept) {
  EXPECT_EQ(parse("x0 and (x1 and x2)"), And(X(0), And(X(1), X(2))));
  EXPECT_EQ(parse("x0 and x1 and x2"), And(X(0), X(1), X(2)));
}

TEST(ParseTest, IdentifierIndices) {
  const Formula f = parse("b and a_1 or x3");
  const auto vars = free_vars(f);
  ASSERT_EQ(vars.size(), 3u);
  EXPECT_EQ(vars[0].index, 3u);
  EXPECT_EQ(vars[0].name.str(), "x3");
  EXPECT_EQ(vars[1].name.str(), "a_1");
  EXPECT_EQ(vars[1].index, 4u);
  EXPECT_EQ(vars[2].name.str(), "b");
  EXPECT_EQ(vars[2].index, 5u);

  const auto plain = free_vars(parse("q or p"));
  EXPECT_EQ(plain[0].name.str(), "p");
  EXPECT_EQ(plain[0].index, 0u);
  // "x01" is not conventional and is indexed like any other name.
  EXPECT_EQ(free_vars(parse("x01"))[0].index, 0u);
}

TEST(ParseTest, UnknownTokenReportsPosition) {
  try {
    parse("x0 & x1");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 3u);
  }
}

TEST(ParseTest, SyntaxErrors) {
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("x0 and"), ParseError);
  EXPECT_THROW(parse("(x0 or x1"), ParseError);
  EXPECT_THROW(parse("x0 x1"), ParseError);
  EXPECT_THROW(parse("and x1"), ParseError);
  try {
    parse("x0 or )");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 6u);
  }
}

TEST(RenderTest, CanonicalStrings) {
  for (const char* text : {"x0 and not x1", "true", "x0 and x1 or x2",
                           "not (x0 or x1)", "x0 and (x1 and x2)", "x0 or (x1 or x2) or not not x3"}) {
    EXPECT_EQ(render(parse(text)), text);
  }
  EXPECT_EQ(render(pairwise_formula()), "x0 and x1 or x2 and x3 or x4 and x5 or x6 and x7");
}

TEST(RenderTest, ParseRenderRoundTripOnRandomTrees) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Formula f = random_formula(6, seed % 7, seed);
    EXPECT_EQ(parse(render(f)), f) << render(f);
  }
}

//===----------------------------------------------------------------------===//
// evaluate
//===----------------------------------------------------------------------===//

TEST(EvaluateTest, Examples) {
  const Formula contradiction = And(X(0), Not(X(0)));
  EXPECT_FALSE(evaluate(contradiction, assign({{0, false}})));
  EXPECT_FALSE(evaluate(contradiction, assign({{0, true}})));
  EXPECT_TRUE(evaluate(Or(X(0), X(1)), assign({{0, false}, {1, true}})));

  Assignment a;
  for (std::uint32_t i = 0; i < 8; ++i) a.set(VarId::make(i), i < 2);
  EXPECT_TRUE(evaluate(pairwise_formula(), a));
}

TEST(EvaluateTest, UnboundVariableIsNamed) {
  try {
    evaluate(parse("alpha or beta"), Assignment{});
    FAIL();
  } catch (const UnboundVariable& e) {
    EXPECT_EQ(e.name(), "alpha");
  }
}

//===----------------------------------------------------------------------===//
// condition
//===----------------------------------------------------------------------===//

TEST(ConditionTest, Examples) {
  EXPECT_EQ(condition(And(X(0), X(1)), VarId::make(0), false), False());
  EXPECT_EQ(condition(Or(X(0), X(1)), VarId::make(0), false), X(1));
  EXPECT_EQ(condition(Not(X(0)), VarId::make(0), true), False());
}

TEST(ConditionTest, FoldsPreexistingConstants) {
  EXPECT_EQ(condition(And(X(1), Or(X(2), False())), VarId::make(0), true), And(X(1), X(2)));
  EXPECT_EQ(condition(Not(Or(X(0), True())), VarId::make(5), true), False());
}

TEST(ConditionTest, UntouchedFoldedTreeIsShared) {
  const Formula f = And(X(1), Or(X(2), X(3)));
  EXPECT_TRUE(condition(f, VarId::make(0), true).same_node(f));
}

TEST(ConditionTest, SoundAndFullyFolded) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Formula f = random_formula(5, 1 + seed % 6, seed);
    for (const VarId& v : free_vars(f)) {
      for (bool b : {false, true}) {
        const Formula g = condition(f, v, b);
        EXPECT_FALSE(contains_var(g, v.index));
        EXPECT_FALSE(constant_below_root(g)) << render(g);
        for (Assignment a : all_assignments(free_vars(f))) {
          a.set(v, b);
          ASSERT_EQ(evaluate(g, a), evaluate(f, a)) << render(f) << " | " << v.name << "=" << b;
        }
      }
    }
  }
}

//===----------------------------------------------------------------------===//
// to_nnf
//===----------------------------------------------------------------------===//

TEST(NnfTest, Examples) {
  EXPECT_EQ(to_nnf(Not(And(X(0), X(1)))), Or(Not(X(0)), Not(X(1))));
  EXPECT_EQ(to_nnf(Not(Not(X(0)))), X(0));
  EXPECT_EQ(to_nnf(Not(Or(X(0), Not(X(1))))), And(Not(X(0)), X(1)));
  EXPECT_EQ(to_nnf(Not(True())), False());
}

TEST(NnfTest, EquivalentOnRandomTrees) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Formula f = random_formula(1 + seed % 10, seed % 8, seed);
    const Formula n = to_nnf(f);
    EXPECT_TRUE(is_nnf(n));
    for (const Assignment& a : all_assignments(free_vars(f))) ASSERT_EQ(evaluate(n, a), evaluate(f, a));
  }
}

//===----------------------------------------------------------------------===//
// free_vars, constructors
//===----------------------------------------------------------------------===//

TEST(FreeVarsTest, Examples) {
  EXPECT_TRUE(free_vars(True()).empty());
  EXPECT_EQ(free_vars(And(X(1), Or(X(0), X(1)))), (std::vector{VarId::make(0), VarId::make(1)}));
  const auto vars = free_vars(pairwise_formula());
  ASSERT_EQ(vars.size(), 8u);
  for (std::uint32_t i = 0; i < 8; ++i) EXPECT_EQ(vars[i], VarId::make(i));
}

TEST(FreeVarsTest, ConflictingNamesAreRejected) {
  const Formula f = And(Formula::var(VarId(0, Symbol("a"))), Formula::var(VarId(0, Symbol("b"))));
  EXPECT_THROW(free_vars(f), FormulaError);
}

TEST(FormulaTest, NaryNeedsTwoChildren) {
  EXPECT_THROW(Formula::conj({X(0)}), FormulaError);
  EXPECT_THROW(Formula::disj({}), FormulaError);
}

TEST(FormulaTest, FoldingConstructors) {
  EXPECT_EQ(conjoin({}), True());
  EXPECT_EQ(disjoin({}), False());
  EXPECT_EQ(conjoin({X(0)}), X(0));
  EXPECT_EQ(conjoin({X(0), True(), X(1)}), And(X(0), X(1)));
  EXPECT_EQ(disjoin({X(0), True()}), True());
}

TEST(FormulaTest, DepthAndSize) {
  EXPECT_EQ(depth(X(0)), 0u);
  EXPECT_EQ(depth(pairwise_formula()), 2u);
  EXPECT_EQ(size(pairwise_formula()), 13u);
}

TEST(FormulaTest, StructuralEquality) {
  EXPECT_EQ(And(X(0), X(1)), And(X(0), X(1)));
  EXPECT_NE(And(X(0), X(1)), And(X(1), X(0)));
  EXPECT_NE(And(X(0), X(1)), Or(X(0), X(1)));
  EXPECT_NE(Formula::var(VarId(0, Symbol("a"))), X(0));
}

TEST(AssignmentTest, ComparesBindingsOnly) {
  Assignment a;
  a.set(5, true);
  a.unset(5);
  EXPECT_EQ(a, Assignment{});
  EXPECT_EQ(a.size(), 0u);
  a.set(2, false);
  EXPECT_EQ(format_assignment(a, std::vector{VarId::make(2)}), "{x2: F}");
}

}  // namespace
}  // namespace edusat
