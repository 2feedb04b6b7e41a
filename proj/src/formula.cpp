// SPDX-License-Identifier: Apache-2.0

#include "edusat/formula.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "edusat/error.hpp"

namespace edusat {

struct Formula::Node {
  Kind kind = Kind::Const;
  bool value = false;
  VarId var;
  std::vector<Formula> children;
  std::size_t hash = 0;
  std::uint64_t mask = 0;
  // No constants below the root, no Not over a constant, no And directly under
  // And, no Or directly under Or. Folding leaves normal subtrees untouched.
  bool normal = true;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::uint64_t bit(std::uint32_t index) { return std::uint64_t{1} << (index % 64); }

}  // namespace

VarId VarId::make(std::uint32_t i) {
  // Conventional names are requested constantly by the generators; cache the low range.
  static const std::vector<Symbol> cache = [] {
    std::vector<Symbol> names;
    names.reserve(256);
    for (std::uint32_t k = 0; k < 256; ++k) names.emplace_back("x" + std::to_string(k));
    return names;
  }();
  if (i < cache.size()) return VarId(i, cache[i]);
  return VarId(i, Symbol("x" + std::to_string(i)));
}

Formula::Formula() : Formula(constant(false)) {}

Formula Formula::constant(bool value) {
  static const Formula kFalse = [] {
    auto n = std::make_shared<Node>();
    n->hash = mix(0, 0);
    return Formula(std::move(n));
  }();
  static const Formula kTrue = [] {
    auto n = std::make_shared<Node>();
    n->value = true;
    n->hash = mix(0, 1);
    return Formula(std::move(n));
  }();
  return value ? kTrue : kFalse;
}

Formula Formula::var(VarId v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->var = v;
  n->hash = mix(mix(1, v.index), v.name.hash());
  n->mask = bit(v.index);
  return Formula(std::move(n));
}

Formula Formula::literal(const Literal& lit) {
  return lit.positive ? var(lit.var) : negate(var(lit.var));
}

Formula Formula::negate(Formula child) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->hash = mix(2, child.hash());
  n->mask = child.var_mask();
  n->normal = child.node_->normal && !child.is_const();
  n->children.push_back(std::move(child));
  return Formula(std::move(n));
}

Formula Formula::nary(Kind kind, std::vector<Formula> children) {
  if (children.size() < 2)
    throw FormulaError("And/Or nodes need at least two children");
  auto n = std::make_shared<Node>();
  n->kind = kind;
  std::size_t h = static_cast<std::size_t>(kind);
  for (const Formula& c : children) {
    h = mix(h, c.hash());
    n->mask |= c.var_mask();
    n->normal = n->normal && c.node_->normal && !c.is_const() && c.kind() != kind;
  }
  n->hash = h;
  n->children = std::move(children);
  return Formula(std::move(n));
}

Formula Formula::conj(std::vector<Formula> children) { return nary(Kind::And, std::move(children)); }
Formula Formula::disj(std::vector<Formula> children) { return nary(Kind::Or, std::move(children)); }

Kind Formula::kind() const noexcept { return node_->kind; }
bool Formula::value() const noexcept { return node_->value; }
const VarId& Formula::var() const noexcept { return node_->var; }
const Formula& Formula::child() const noexcept { return node_->children.front(); }
std::span<const Formula> Formula::children() const noexcept { return node_->children; }
std::size_t Formula::hash() const noexcept { return node_->hash; }
std::uint64_t Formula::var_mask() const noexcept { return node_->mask; }
bool Formula::is_folded() const noexcept { return node_->normal; }

bool Formula::is_literal() const noexcept {
  return kind() == Kind::Var || (kind() == Kind::Not && child().kind() == Kind::Var);
}

Literal Formula::as_literal() const {
  if (kind() == Kind::Var) return {var(), true};
  return {child().var(), false};
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Const:
      return a.value() == b.value();
    case Kind::Var:
      return a.var() == b.var();
    default:
      return std::ranges::equal(a.children(), b.children());
  }
}

namespace {

Formula fold_nary(Kind kind, std::span<const Formula> kids) {
  const bool absorbing = kind == Kind::Or;
  std::vector<Formula> out;
  out.reserve(kids.size());
  for (const Formula& k : kids) {
    if (k.is_const()) {
      if (k.value() == absorbing) return Formula::constant(absorbing);
      continue;
    }
    if (k.kind() == kind) {
      out.insert(out.end(), k.children().begin(), k.children().end());
    } else {
      out.push_back(k);
    }
  }
  if (out.empty()) return Formula::constant(!absorbing);
  if (out.size() == 1) return out.front();
  return kind == Kind::And ? Formula::conj(std::move(out)) : Formula::disj(std::move(out));
}

struct Substitution {
  std::uint32_t index;
  bool value;
};

Formula fold(const Formula& f, const Substitution* s) {
  const bool touches = s != nullptr && (f.var_mask() & bit(s->index)) != 0;
  if (f.is_folded() && !touches) return f;
  switch (f.kind()) {
    case Kind::Const:
      return f;
    case Kind::Var:
      if (s != nullptr && f.var().index == s->index) return Formula::constant(s->value);
      return f;
    case Kind::Not: {
      Formula c = fold(f.child(), s);
      if (c.is_const()) return Formula::constant(!c.value());
      if (c.same_node(f.child())) return f;
      return Formula::negate(std::move(c));
    }
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      bool changed = false;
      for (const Formula& c : f.children()) {
        kids.push_back(fold(c, s));
        changed = changed || !kids.back().same_node(c);
      }
      if (!changed && f.is_folded()) return f;
      return fold_nary(f.kind(), kids);
    }
  }
  return f;
}


}  // namespace

Formula conjoin(std::vector<Formula> children) { return fold_nary(Kind::And, children); }
Formula disjoin(std::vector<Formula> children) { return fold_nary(Kind::Or, children); }

Formula condition(const Formula& f, const VarId& v, bool value) {
  const Substitution s{v.index, value};
  return fold(f, &s);
}

Formula simplify(const Formula& f) { return fold(f, nullptr); }

bool evaluate(const Formula& f, const Assignment& a) {
  switch (f.kind()) {
    case Kind::Const:
      return f.value();
    case Kind::Var: {
      auto v = a.get(f.var());
      if (!v) throw UnboundVariable(f.var().name.str());
      return *v;
    }
    case Kind::Not:
      return !evaluate(f.child(), a);
    case Kind::And:
      for (const Formula& c : f.children())
        if (!evaluate(c, a)) return false;
      return true;
    case Kind::Or:
      for (const Formula& c : f.children())
        if (evaluate(c, a)) return true;
      return false;
  }
  return false;
}

namespace {

Formula nnf(const Formula& f, bool negated) {
  switch (f.kind()) {
    case Kind::Const:
      return Formula::constant(f.value() != negated);
    case Kind::Var:
      return negated ? Formula::negate(f) : f;
    case Kind::Not:
      return nnf(f.child(), !negated);
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const Formula& c : f.children()) kids.push_back(nnf(c, negated));
      const bool as_and = (f.kind() == Kind::And) != negated;
      return as_and ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
  }
  return f;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

bool is_nnf(const Formula& f) {
  switch (f.kind()) {
    case Kind::Const:
    case Kind::Var:
      return true;
    case Kind::Not:
      return f.child().kind() == Kind::Var;
    default:
      return std::ranges::all_of(f.children(), [](const Formula& c) { return is_nnf(c); });
  }
}

namespace {

void collect_vars(const Formula& f, std::vector<VarId>& out) {
  if (f.kind() == Kind::Var) {
    out.push_back(f.var());
    return;
  }
  for (const Formula& c : f.children()) collect_vars(c, out);
}

}  // namespace

std::vector<VarId> free_vars(const Formula& f) {
  std::vector<VarId> out;
  collect_vars(f, out);
  return unique_vars(std::move(out));
}

std::vector<VarId> unique_vars(std::vector<VarId> out) {
  std::ranges::sort(out, {}, &VarId::index);
  std::size_t kept = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (kept > 0 && out[kept - 1].index == out[i].index) {
      if (out[kept - 1].name != out[i].name)
        throw FormulaError("variable index " + std::to_string(out[i].index) + " is named both '" +
                           out[kept - 1].name.str() + "' and '" + out[i].name.str() + "'");
      continue;
    }
    out[kept++] = out[i];
  }
  out.resize(kept);
  return out;
}

std::size_t depth(const Formula& f) {
  std::size_t d = 0;
  for (const Formula& c : f.children()) d = std::max(d, depth(c) + 1);
  return d;
}

std::size_t size(const Formula& f) {
  std::size_t n = 1;
  for (const Formula& c : f.children()) n += size(c);
  return n;
}

void Assignment::set(std::uint32_t index, bool value) {
  if (index >= values_.size()) values_.resize(index + 1, -1);
  values_[index] = value ? 1 : 0;
}

void Assignment::unset(std::uint32_t index) {
  if (index < values_.size()) values_[index] = -1;
}

std::size_t Assignment::size() const {
  return static_cast<std::size_t>(std::ranges::count_if(values_, [](std::int8_t v) { return v >= 0; }));
}

std::vector<std::pair<std::uint32_t, bool>> Assignment::bindings() const {
  std::vector<std::pair<std::uint32_t, bool>> out;
  for (std::uint32_t i = 0; i < values_.size(); ++i)
    if (values_[i] >= 0) out.emplace_back(i, values_[i] != 0);
  return out;
}

bool operator==(const Assignment& a, const Assignment& b) { return a.bindings() == b.bindings(); }

std::strong_ordering operator<=>(const Assignment& a, const Assignment& b) {
  return a.bindings() <=> b.bindings();
}

std::string format_assignment(const Assignment& a, std::span<const VarId> vars) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [index, value] : a.bindings()) {
    if (!first) os << ", ";
    first = false;
    auto it = std::ranges::find(vars, index, &VarId::index);
    if (it != vars.end()) {
      os << it->name;
    } else {
      os << '#' << index;
    }
    os << ": " << (value ? 'T' : 'F');
  }
  os << '}';
  return os.str();
}

}  // namespace edusat
