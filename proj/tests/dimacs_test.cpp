// SPDX-License-Identifier: Apache-2.0

#include "edusat/dimacs.hpp"

#include <gtest/gtest.h>

#include "edusat/error.hpp"
#include "test_util.hpp"

namespace edusat {
namespace {

using namespace edusat::testing;

TEST(DimacsTest, ReadsClauses) {
  const Formula f = from_dimacs("p cnf 2 2\n1 -2 0\n2 0\n");
  EXPECT_EQ(f, And(Or(X(1), Not(X(2))), X(2)));
}

TEST(DimacsTest, CommentsAndTrailer) {
  const Formula f = from_dimacs("c a comment\np cnf 3 2\n1 2\n 0 -3 0\n%\n0\n");
  EXPECT_EQ(f, And(Or(X(1), X(2)), Not(X(3))));
}

TEST(DimacsTest, DegenerateInputs) {
  EXPECT_EQ(from_dimacs("p cnf 0 0\n"), True());
  EXPECT_EQ(from_dimacs("p cnf 1 1\n0\n"), False());
  EXPECT_EQ(from_dimacs("p cnf 1 1\n-1 0\n"), Not(X(1)));
}

TEST(DimacsTest, Errors) {
  EXPECT_THROW(from_dimacs("1 2 0\n"), DimacsError);
  EXPECT_THROW(from_dimacs("p cnf 2 1\np cnf 2 1\n1 0\n"), DimacsError);
  EXPECT_THROW(from_dimacs("p cnf 2 1\n3 0\n"), DimacsError);
  EXPECT_THROW(from_dimacs("p cnf 2 1\n1 x 0\n"), DimacsError);
  EXPECT_THROW(from_dimacs("p cnf 2 1\n1 2\n"), DimacsError);
  EXPECT_THROW(from_dimacs("p cnf 2 2\n1 0\n"), DimacsError);
  EXPECT_THROW(from_dimacs("p dnf 2 1\n1 0\n"), DimacsError);
  EXPECT_THROW(from_dimacs(""), DimacsError);
}

TEST(DimacsTest, WritesCnf) {
  EXPECT_EQ(to_dimacs(And(Or(X(1), Not(X(2))), X(2))), "p cnf 2 2\n1 -2 0\n2 0\n");
  // Index 0 has no DIMACS number, so everything shifts up by one.
  EXPECT_EQ(to_dimacs(Or(X(0), Not(X(1)))), "p cnf 2 1\n1 -2 0\n");
  EXPECT_EQ(to_dimacs(True()), "p cnf 0 0\n");
  EXPECT_EQ(to_dimacs(False()), "p cnf 0 1\n0\n");
}

TEST(DimacsTest, RejectsNonCnf) {
  EXPECT_THROW(to_dimacs(Not(And(X(1), X(2)))), DimacsError);
  EXPECT_THROW(to_dimacs(And(X(1), Or(X(2), And(X(3), X(4))))), DimacsError);
}

TEST(DimacsTest, RoundTrip) {
  for (const char* text : {"p cnf 2 2\n1 -2 0\n2 0\n", "p cnf 4 3\n1 2 3 0\n-4 0\n-1 -3 4 0\n"})
    EXPECT_EQ(to_dimacs(from_dimacs(text)), text);
}

TEST(DimacsTest, ModelsSurviveRoundTrip) {
  const Formula f = from_dimacs("p cnf 3 3\n1 2 0\n-1 3 0\n-2 -3 0\n");
  EXPECT_EQ(brute_force_models(from_dimacs(to_dimacs(f))), brute_force_models(f));
}

}  // namespace
}  // namespace edusat
