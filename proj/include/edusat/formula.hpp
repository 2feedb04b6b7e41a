// SPDX-License-Identifier: Apache-2.0
//
// Boolean formula trees shared by every solver in the toolkit.

#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "edusat/symbol.hpp"

namespace edusat {

/// A Boolean variable: a small integer index plus its display name. Within one
/// formula the index <-> name mapping is a bijection.
struct VarId {
  std::uint32_t index = 0;
  Symbol name;

  VarId() = default;
  VarId(std::uint32_t i, Symbol n) : index(i), name(n) {}
  /// Variable `i` with the conventional name "x<i>".
  static VarId make(std::uint32_t i);

  friend bool operator==(const VarId& a, const VarId& b) noexcept {
    return a.index == b.index && a.name == b.name;
  }
  friend std::strong_ordering operator<=>(const VarId& a, const VarId& b) noexcept {
    if (auto c = a.index <=> b.index; c != 0) return c;
    return a.name <=> b.name;
  }
};

inline std::ostream& operator<<(std::ostream& os, const VarId& v) { return os << v.name; }

struct Literal {
  VarId var;
  bool positive = true;

  Literal negated() const { return {var, !positive}; }
  friend bool operator==(const Literal&, const Literal&) = default;
};

enum class Kind : std::uint8_t { Const, Var, Not, And, Or };

/// Immutable Boolean expression tree. Copies share structure; equality is structural.
class Formula {
 public:
  /// Const(false).
  Formula();

  static Formula constant(bool value);
  static Formula var(VarId v);
  static Formula var(std::uint32_t index) { return var(VarId::make(index)); }
  static Formula literal(const Literal& lit);
  static Formula negate(Formula child);
  /// Strict n-ary constructors: throw FormulaError on fewer than two children.
  static Formula conj(std::vector<Formula> children);
  static Formula disj(std::vector<Formula> children);

  Kind kind() const noexcept;
  bool is_const() const noexcept { return kind() == Kind::Const; }
  bool is_const(bool value) const noexcept { return is_const() && this->value() == value; }
  bool is_literal() const noexcept;

  /// Const only.
  bool value() const noexcept;
  /// Var only.
  const VarId& var() const noexcept;
  /// Not only.
  const Formula& child() const noexcept;
  /// Not: one child; And/Or: two or more; otherwise empty.
  std::span<const Formula> children() const noexcept;

  /// Literal view of a Var or Not(Var) node. Undefined for other shapes.
  Literal as_literal() const;

  std::size_t hash() const noexcept;
  /// Bit (index mod 64) is set for every variable below this node. A clear bit
  /// proves absence; a set bit does not prove presence.
  std::uint64_t var_mask() const noexcept;
  /// True when constant folding would return this very node.
  bool is_folded() const noexcept;
  bool same_node(const Formula& other) const noexcept { return node_ == other.node_; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula nary(Kind kind, std::vector<Formula> children);

  std::shared_ptr<const Node> node_;
};

/// Folding constructors: And/Or of zero children become the neutral constant,
/// of one child become that child, and constant children are absorbed.
Formula conjoin(std::vector<Formula> children);
Formula disjoin(std::vector<Formula> children);

/// Partial or total mapping from variable indices to truth values.
class Assignment {
 public:
  Assignment() = default;

  void set(const VarId& v, bool value) { set(v.index, value); }
  void set(std::uint32_t index, bool value);
  void unset(std::uint32_t index);
  std::optional<bool> get(const VarId& v) const { return get(v.index); }
  std::optional<bool> get(std::uint32_t index) const {
    if (index >= values_.size() || values_[index] < 0) return std::nullopt;
    return values_[index] != 0;
  }
  bool contains(std::uint32_t index) const { return get(index).has_value(); }
  /// Number of bound variables.
  std::size_t size() const;
  std::vector<std::pair<std::uint32_t, bool>> bindings() const;

  /// Compare bound (index, value) pairs only.
  friend bool operator==(const Assignment& a, const Assignment& b);
  friend std::strong_ordering operator<=>(const Assignment& a, const Assignment& b);

 private:
  std::vector<std::int8_t> values_;  // -1 = unbound
};

/// Renders `{x0: T, x2: F}` using the names in `vars`; indices without a name print as `#i`.
std::string format_assignment(const Assignment& a, std::span<const VarId> vars);

/// Standard Boolean semantics on the original tree. Throws UnboundVariable when
/// evaluation reaches a variable `a` does not bind.
bool evaluate(const Formula& f, const Assignment& a);

/// Substitutes `value` for `v` and constant-folds the whole tree bottom-up.
/// Nested And-in-And / Or-in-Or are flattened while folding.
Formula condition(const Formula& f, const VarId& v, bool value);

/// Constant folding and flattening without substitution.
Formula simplify(const Formula& f);

/// Pushes negations down to variables (De Morgan, double negation).
Formula to_nnf(const Formula& f);
bool is_nnf(const Formula& f);

/// Sorted by index, duplicate-free. Throws FormulaError if one index carries two names.
std::vector<VarId> free_vars(const Formula& f);
/// The free_vars reduction applied to a list of variable occurrences.
std::vector<VarId> unique_vars(std::vector<VarId> occurrences);

/// Edge depth: a leaf has depth 0.
std::size_t depth(const Formula& f);
/// Total node count.
std::size_t size(const Formula& f);

/// Canonical text in the keyword grammar (`and`, `or`, `not`, `true`, `false`).
std::string render(const Formula& f);

std::ostream& operator<<(std::ostream& os, const Formula& f);

/// Parses the keyword grammar:
///   formula := or_expr
///   or_expr := and_expr ("or" and_expr)*
///   and_expr := unary ("and" unary)*
///   unary := "not" unary | atom
///   atom := ident | "true" | "false" | "(" formula ")"
/// Identifiers spelled `x<k>` (k without leading zeros) get index k. Every other
/// identifier gets an index after the largest `x<k>` index, in natural name order.
Formula parse(std::string_view text);

}  // namespace edusat

template <>
struct std::hash<edusat::Formula> {
  std::size_t operator()(const edusat::Formula& f) const noexcept { return f.hash(); }
};
