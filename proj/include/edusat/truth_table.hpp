// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "edusat/formula.hpp"

namespace edusat {

inline constexpr std::size_t kTruthTableVarLimit = 24;

/// Exhaustive enumeration of a formula over its free variables. Row `i` binds
/// `vars[k]` to bit (n-1-k) of `i`, so rows run lexicographically in `vars`
/// with false before true.
class TruthTable {
 public:
  TruthTable(std::vector<VarId> vars, std::vector<std::uint8_t> outputs);

  const std::vector<VarId>& vars() const noexcept { return vars_; }
  std::size_t rows() const noexcept { return outputs_.size(); }
  bool output(std::size_t row) const { return outputs_.at(row) != 0; }
  Assignment row(std::size_t row) const;
  /// Assignments of every row whose output is true, in row order.
  std::vector<Assignment> true_rows() const;
  std::size_t count_true() const;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  std::vector<VarId> vars_;
  std::vector<std::uint8_t> outputs_;
};

/// Decodes row `row` over `vars` as described on TruthTable.
Assignment decode_row(std::span<const VarId> vars, std::size_t row);

/// Rows evaluated in parallel with OpenMP when available. Throws
/// TooManyVariables above kTruthTableVarLimit.
TruthTable truth_table(const Formula& f);

/// Single-threaded reference for truth_table().
TruthTable truth_table_serial(const Formula& f);

}  // namespace edusat
