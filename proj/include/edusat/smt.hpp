// SPDX-License-Identifier: Apache-2.0
//
// Bounded-integer SMT formulas: integer terms over + - * // (floor division),
// comparison atoms, and a Boolean skeleton over a deduplicated atom table.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "edusat/formula.hpp"

namespace edusat {

enum class Cmp : std::uint8_t { Gt, Lt, Le, Ge, Eq };

std::string_view to_string(Cmp op);

/// Immutable integer term tree; all operators are binary.
class IntTerm {
 public:
  enum class Op : std::uint8_t { Const, Var, Add, Sub, Mul, FloorDiv };

  IntTerm();  // Const(0)

  static IntTerm constant(std::int64_t value);
  static IntTerm var(std::string_view name);
  static IntTerm binary(Op op, IntTerm lhs, IntTerm rhs);

  Op op() const noexcept;
  std::int64_t value() const noexcept;
  Symbol name() const noexcept;
  const IntTerm& lhs() const noexcept;
  const IntTerm& rhs() const noexcept;
  bool is_leaf() const noexcept { return op() == Op::Const || op() == Op::Var; }

  std::size_t hash() const noexcept;
  friend bool operator==(const IntTerm& a, const IntTerm& b);

 private:
  struct Node;
  explicit IntTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline IntTerm operator+(IntTerm a, IntTerm b) { return IntTerm::binary(IntTerm::Op::Add, std::move(a), std::move(b)); }
inline IntTerm operator-(IntTerm a, IntTerm b) { return IntTerm::binary(IntTerm::Op::Sub, std::move(a), std::move(b)); }
inline IntTerm operator*(IntTerm a, IntTerm b) { return IntTerm::binary(IntTerm::Op::Mul, std::move(a), std::move(b)); }
inline IntTerm floor_div(IntTerm a, IntTerm b) {
  return IntTerm::binary(IntTerm::Op::FloorDiv, std::move(a), std::move(b));
}

struct Atom {
  Cmp op = Cmp::Eq;
  IntTerm lhs;
  IntTerm rhs;

  std::size_t hash() const noexcept;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Integer variable -> value.
using IntModel = std::map<std::string, std::int64_t>;

/// Rounds toward negative infinity. Throws DivisionByZero, or ArithmeticError
/// for INT64_MIN / -1.
std::int64_t floor_divide(std::int64_t a, std::int64_t b);

/// Exact 64-bit arithmetic; overflow raises ArithmeticError.
std::int64_t eval_term(const IntTerm& t, const IntModel& a);
bool eval_atom(const Atom& at, const IntModel& a);

void collect_int_vars(const IntTerm& t, std::vector<Symbol>& out);

std::string render(const IntTerm& t);
std::string render(const Atom& at);

class SmtBuilder;

/// Boolean skeleton whose variable `i` (named "b<i>") stands for atoms()[i].
/// Every atom in the table occurs in the skeleton and no two are equal.
class SmtFormula {
 public:
  SmtFormula();  // Const(true), no atoms

  const Formula& skeleton() const noexcept { return skeleton_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  /// Integer variables in natural name order.
  const std::vector<Symbol>& int_vars() const noexcept { return int_vars_; }

  static VarId atom_var(std::size_t index);

  friend bool operator==(const SmtFormula&, const SmtFormula&) = default;

 private:
  friend class SmtBuilder;
  Formula skeleton_;
  std::vector<Atom> atoms_;
  std::vector<Symbol> int_vars_;
};

/// Interns atoms and assembles an SmtFormula from a skeleton over them.
class SmtBuilder {
 public:
  /// Boolean variable standing for `at`; structurally equal atoms share one variable.
  Formula atom(Atom at);
  Formula atom(Cmp op, IntTerm lhs, IntTerm rhs) { return atom(Atom{op, std::move(lhs), std::move(rhs)}); }

  /// Drops interned atoms the skeleton does not use and renumbers the rest in
  /// order of first use. Throws FormulaError if the skeleton mentions a variable
  /// that is not an interned atom.
  SmtFormula build(const Formula& skeleton) const;

 private:
  std::vector<Atom> atoms_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> by_hash_;
};

/// SMT truth: false whenever any atom of the formula is undefined under `a`
/// (zero divisor, overflow); otherwise the skeleton under the atom values.
bool smt_holds(const SmtFormula& f, const IntModel& a);

struct Abstraction {
  Formula skeleton;
  std::map<VarId, Atom> atoms;
};

/// Boolean abstraction: one fresh variable per distinct atom.
Abstraction abstract(const SmtFormula& f);

struct Range {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::uint64_t size() const { return static_cast<std::uint64_t>(hi - lo) + 1; }
  friend bool operator==(const Range&, const Range&) = default;
};

/// Inclusive integer search ranges per variable.
class DomainBounds {
 public:
  DomainBounds() = default;

  /// Throws BoundsError when lo > hi.
  void set(std::string_view name, std::int64_t lo, std::int64_t hi);
  std::optional<Range> get(std::string_view name) const;
  const std::map<std::string, Range, std::less<>>& ranges() const noexcept { return ranges_; }

  /// "x=lo..hi,y=lo..hi"; throws BoundsError on malformed text.
  static DomainBounds parse(std::string_view text);
  std::string to_string() const;

  /// Ranges for `vars` in order; throws BoundsError naming the first missing one.
  std::vector<Range> resolve(const std::vector<Symbol>& vars) const;

 private:
  std::map<std::string, Range, std::less<>> ranges_;
};

/// Extends the Boolean keyword grammar with comparison atoms:
///   atom := "(" smt ")" | term cmp term
///   cmp := ">" | "<" | "<=" | ">=" | "="
///   term := term ("+"|"-") factor ; factor := factor ("*"|"//") unary
///   unary := "-" unary | int | ident | "(" term ")"
/// Bare Boolean identifiers are rejected.
SmtFormula parse_smt(std::string_view text);

std::string render(const SmtFormula& f);

}  // namespace edusat

template <>
struct std::hash<edusat::IntTerm> {
  std::size_t operator()(const edusat::IntTerm& t) const noexcept { return t.hash(); }
};
