// SPDX-License-Identifier: Apache-2.0
//
// Five NP-complete problems reduced to bounded-integer SMT: n-queens, graph
// k-coloring, subset sum, vertex cover and Sudoku. Each problem has an
// encoder, a decoder from SMT models, and a native validity check that never
// touches the SMT layer.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "edusat/smt.hpp"
#include "edusat/smt_solver.hpp"

namespace edusat {

enum class Problem { NQueens, Coloring, SubsetSum, VertexCover, Sudoku };

std::string_view to_string(Problem p);
std::optional<Problem> problem_from_string(std::string_view name);

/// Undirected simple graph on vertices 0..vertices-1.
struct Graph {
  std::uint32_t vertices = 0;
  /// Normalized to u < v, sorted, no duplicates.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  /// Throws InstanceError on self-loops or out-of-range endpoints.
  static Graph make(std::uint32_t vertices, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);
};

struct NQueensInstance {
  std::uint32_t n = 1;
};

struct ColoringInstance {
  Graph graph;
  std::uint32_t colors = 1;
};

struct SubsetSumInstance {
  std::vector<std::int64_t> items;
  std::int64_t target = 0;
};

struct VertexCoverInstance {
  Graph graph;
  std::uint32_t budget = 0;
};

/// 0 marks a blank cell.
using SudokuGrid = std::array<std::array<std::uint8_t, 9>, 9>;

struct SudokuInstance {
  SudokuGrid grid{};
};

using Instance = std::variant<NQueensInstance, ColoringInstance, SubsetSumInstance, VertexCoverInstance, SudokuInstance>;

Problem problem_of(const Instance& inst);

/// rows[c] is the row of the queen in column c.
struct QueenPlacement {
  std::vector<std::uint32_t> rows;
  friend bool operator==(const QueenPlacement&, const QueenPlacement&) = default;
  friend auto operator<=>(const QueenPlacement&, const QueenPlacement&) = default;
};

struct VertexColoring {
  std::vector<std::uint32_t> colors;
  friend bool operator==(const VertexColoring&, const VertexColoring&) = default;
  friend auto operator<=>(const VertexColoring&, const VertexColoring&) = default;
};

/// Ascending item indices.
struct SubsetSelection {
  std::vector<std::size_t> chosen;
  friend bool operator==(const SubsetSelection&, const SubsetSelection&) = default;
  friend auto operator<=>(const SubsetSelection&, const SubsetSelection&) = default;
};

/// Ascending vertex ids.
struct VertexCover {
  std::vector<std::uint32_t> cover;
  friend bool operator==(const VertexCover&, const VertexCover&) = default;
  friend auto operator<=>(const VertexCover&, const VertexCover&) = default;
};

struct SudokuSolution {
  SudokuGrid grid{};
  friend bool operator==(const SudokuSolution&, const SudokuSolution&) = default;
  friend auto operator<=>(const SudokuSolution&, const SudokuSolution&) = default;
};

using DomainSolution = std::variant<QueenPlacement, VertexColoring, SubsetSelection, VertexCover, SudokuSolution>;

struct Encoding {
  SmtFormula formula;
  DomainBounds bounds;
};

/// q0..q{n-1} in [0, n-1]; for i < j: not(qi = qj), not(qi - qj = i - j), not(qi - qj = j - i).
Encoding encode_nqueens(const NQueensInstance& inst);
/// c0..c{V-1} in [0, k-1]; not(cu = cv) per edge.
Encoding encode_coloring(const ColoringInstance& inst);
/// Selectors s0.. in [0, 1] with s0*a0 + s1*a1 + ... = target.
Encoding encode_subset_sum(const SubsetSumInstance& inst);
/// Selectors s0.. in [0, 1]; (su = 1) or (sv = 1) per edge; s0 + s1 + ... <= budget.
Encoding encode_vertex_cover(const VertexCoverInstance& inst);
/// One variable r<row>c<col> (1-based) in [1, 9] per blank cell; pairwise
/// disequalities along rows, columns and boxes, with givens as constants.
Encoding encode_sudoku(const SudokuInstance& inst);

/// Variables that no constraint mentions still get the trivial atom `v >= lo`
/// so that every model binds them.
Encoding encode(const Instance& inst);

/// Throws InstanceError if `model` misses an encoding variable or holds a
/// value outside its bounds.
DomainSolution decode(const Instance& inst, const IntModel& model);

/// Checks the problem's own rules directly; false on a solution of the wrong kind.
bool validate(const Instance& inst, const DomainSolution& sol);

/// Human-readable text: a board for n-queens and Sudoku, one line otherwise.
std::string render(const Instance& inst, const DomainSolution& sol);

/// Instance file formats:
///   n-queens      a single integer n
///   coloring      "V E k" then E lines "u v"
///   vertex cover  as coloring, with k the cover budget
///   subset sum    a line of integers, then "target <t>"
///   Sudoku        9 lines of 9 characters, '.' or '0' for a blank
/// Throws InstanceError on malformed input or Sudoku givens that already clash.
Instance parse_instance(Problem p, std::string_view text);

struct NpcOutcome {
  SmtResult smt;
  /// Decoded from smt.models, in the same order; each one has passed validate().
  std::vector<DomainSolution> solutions;
};

/// Encodes, solves and decodes. Throws InvalidSolution if a decoded model
/// fails validation.
NpcOutcome solve_instance(const Instance& inst, const SmtSolveOptions& opts);

}  // namespace edusat
