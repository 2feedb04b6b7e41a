// SPDX-License-Identifier: Apache-2.0
//
// Solvers for bounded-integer SMT formulas: a complete search that enumerates
// Boolean models of the abstraction and backtracks over integer values for
// each, and min-conflicts local search, which may give up with Unknown.

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "edusat/dpll.hpp"
#include "edusat/smt.hpp"

namespace edusat {

enum class SmtStatus { Sat, UnsatInRange, Unknown };
enum class SmtMethod { Backtracking, MinConflicts };

std::string_view to_string(SmtStatus s);

struct SmtStats {
  /// Backtracking: integer search nodes visited. Min-conflicts: repair steps taken.
  std::uint64_t iterations = 0;
  /// Constraint evaluations (backtracking) or full conflict counts (min-conflicts).
  std::uint64_t conflicts_examined = 0;
  /// Boolean cubes of the abstraction handed to the integer search.
  std::uint64_t boolean_models = 0;
  double wall_time = 0.0;
};

struct SmtResult {
  SmtStatus status = SmtStatus::UnsatInRange;
  /// Within bounds and satisfying the formula. Sorted and distinct in All mode.
  std::vector<IntModel> models;
  SmtStats stats;

  bool sat() const noexcept { return status == SmtStatus::Sat; }
};

/// Complete over the box given by `bounds`. Throws BoundsError if a variable
/// of `f` has no range.
SmtResult solve_backtracking(const SmtFormula& f, const DomainBounds& bounds, SolveMode mode);

struct ConflictReport {
  /// Zero exactly when smt_holds(f, a).
  std::size_t count = 0;
  std::set<std::string> vars;

  friend bool operator==(const ConflictReport&, const ConflictReport&) = default;
};

/// Violation degree of the NNF skeleton: a literal costs 1 when its atom is
/// false for it or undefined, And adds its children, Or takes its cheapest
/// child (first on ties). Every undefined atom adds 1 more, since one undefined
/// atom anywhere rejects the assignment. `vars` collects the variables of the
/// atoms charged. Throws UnboundVariable if `a` misses a variable.
ConflictReport conflicts(const SmtFormula& f, const IntModel& a);

/// Uniform seeded start inside the box; each step reassigns a uniformly chosen
/// conflicted variable to its conflict-minimizing value (smallest on ties).
/// Returns Sat as soon as the count reaches zero, with stats.iterations the
/// number of repairs made, or Unknown with stats.iterations == max_steps.
SmtResult solve_min_conflicts(const SmtFormula& f, const DomainBounds& bounds, std::uint64_t max_steps,
                              std::uint64_t seed);

struct SmtSolveOptions {
  SmtMethod method = SmtMethod::Backtracking;
  /// Min-conflicts always looks for a single model.
  SolveMode mode = SolveMode::Single;
  std::uint64_t max_steps = 1000;
  std::uint64_t seed = 0;
};

SmtResult solve_smt(const SmtFormula& f, const DomainBounds& bounds, const SmtSolveOptions& opts);

}  // namespace edusat
