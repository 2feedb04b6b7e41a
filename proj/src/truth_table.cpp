// SPDX-License-Identifier: Apache-2.0

#include "edusat/truth_table.hpp"

#include <algorithm>

#include "edusat/error.hpp"

namespace edusat {

TruthTable::TruthTable(std::vector<VarId> vars, std::vector<std::uint8_t> outputs)
    : vars_(std::move(vars)), outputs_(std::move(outputs)) {
  if (outputs_.size() != (std::size_t{1} << vars_.size()))
    throw FormulaError("truth table needs exactly 2^n rows");
}

Assignment decode_row(std::span<const VarId> vars, std::size_t row) {
  Assignment a;
  const std::size_t n = vars.size();
  for (std::size_t k = 0; k < n; ++k) a.set(vars[k], ((row >> (n - 1 - k)) & 1u) != 0);
  return a;
}

Assignment TruthTable::row(std::size_t r) const {
  if (r >= rows()) throw std::out_of_range("truth table row");
  return decode_row(vars_, r);
}

std::vector<Assignment> TruthTable::true_rows() const {
  std::vector<Assignment> out;
  for (std::size_t r = 0; r < rows(); ++r)
    if (outputs_[r] != 0) out.push_back(decode_row(vars_, r));
  return out;
}

std::size_t TruthTable::count_true() const {
  return static_cast<std::size_t>(std::ranges::count(outputs_, std::uint8_t{1}));
}

namespace {

std::vector<VarId> checked_vars(const Formula& f) {
  auto vars = free_vars(f);
  if (vars.size() > kTruthTableVarLimit) throw TooManyVariables(vars.size(), kTruthTableVarLimit);
  return vars;
}

}  // namespace

TruthTable truth_table_serial(const Formula& f) {
  auto vars = checked_vars(f);
  const std::size_t rows = std::size_t{1} << vars.size();
  std::vector<std::uint8_t> out(rows);
  for (std::size_t r = 0; r < rows; ++r) out[r] = evaluate(f, decode_row(vars, r)) ? 1 : 0;
  return TruthTable(std::move(vars), std::move(out));
}

TruthTable truth_table(const Formula& f) {
  auto vars = checked_vars(f);
  const auto rows = static_cast<std::int64_t>(std::size_t{1} << vars.size());
  std::vector<std::uint8_t> out(static_cast<std::size_t>(rows));
  const std::size_t n = vars.size();
  // Rows are independent; each thread keeps one assignment and rewrites it per row.
#pragma omp parallel if (rows >= 4096)
  {
    Assignment a;
    for (const VarId& v : vars) a.set(v, false);
#pragma omp for schedule(static)
    for (std::int64_t r = 0; r < rows; ++r) {
      const auto row = static_cast<std::size_t>(r);
      for (std::size_t k = 0; k < n; ++k) a.set(vars[k], ((row >> (n - 1 - k)) & 1u) != 0);
      out[row] = evaluate(f, a) ? 1 : 0;
    }
  }
  return TruthTable(std::move(vars), std::move(out));
}

}  // namespace edusat
