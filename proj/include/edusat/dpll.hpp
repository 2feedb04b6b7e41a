// SPDX-License-Identifier: Apache-2.0
//
// Two complete SAT engines over formula trees: a naive backtracking baseline
// that only evaluates total assignments, and a DPLL engine with unit-clause and
// pure-literal rules. DPLL runs on a compiled NNF and follows exactly the steps
// that repeated condition() folding of the NNF tree would take.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "edusat/formula.hpp"

namespace edusat {

enum class SolveMode { Single, All };
enum class SatStatus { Sat, Unsat };

struct SatResult {
  SatStatus status = SatStatus::Unsat;
  /// Total over free_vars of the input. One model in Single mode; all models,
  /// sorted, in All mode.
  std::vector<Assignment> models;

  bool sat() const noexcept { return status == SatStatus::Sat; }
};

struct SolverStats {
  std::uint64_t decisions = 0;
  std::uint64_t unit_propagations = 0;
  std::uint64_t pure_literal_assignments = 0;
  /// Times the search stopped at a folded constant while variables were still unassigned.
  std::uint64_t early_terminations = 0;
  double wall_time = 0.0;  // seconds, solve call only
};

struct SatOutcome {
  SatResult result;
  SolverStats stats;
};

/// Branches on free variables in ascending index order, false first, and
/// evaluates the untouched tree at every total assignment.
SatOutcome solve_naive(const Formula& f, SolveMode mode);

/// Per search node, in order: early termination on a folded constant, unit
/// clauses, pure literals (Single mode only), then branching on the lowest
/// remaining variable, false first.
SatOutcome solve_dpll(const Formula& f, SolveMode mode);

/// Same search as solve_dpll, but every step rebuilds the tree with
/// condition(). Slow; kept as the reference the compiled engine is checked against.
SatOutcome solve_dpll_reference(const Formula& f, SolveMode mode);

/// A literal that is the whole formula or a bare conjunct of the top-level
/// And (first in child order), if any. `f` must be in NNF.
std::optional<Literal> find_unit_literal(const Formula& f);

/// The lowest-index variable occurring with a single polarity. `f` must be in NNF.
std::optional<Literal> find_pure_literal(const Formula& f);

enum class Visit { Continue, Stop };

/// Enumerates the satisfying leaves of the DPLL search tree without the
/// pure-literal rule. Each cube is a partial assignment under which `f` folds
/// to true; distinct cubes are disjoint and together cover every model.
/// Cubes are produced lazily; the visitor may stop the enumeration.
SolverStats for_each_cube(const Formula& f, const std::function<Visit(const Assignment&)>& visit);
SolverStats for_each_cube_reference(const Formula& f, const std::function<Visit(const Assignment&)>& visit);

/// Every total extension of `cube` over `vars`.
std::vector<Assignment> expand_cube(const Assignment& cube, std::span<const VarId> vars);

}  // namespace edusat
