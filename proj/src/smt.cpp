// SPDX-License-Identifier: Apache-2.0

#include "edusat/smt.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>

#include "edusat/error.hpp"

namespace edusat {

std::string_view to_string(Cmp op) {
  switch (op) {
    case Cmp::Gt:
      return ">";
    case Cmp::Lt:
      return "<";
    case Cmp::Le:
      return "<=";
    case Cmp::Ge:
      return ">=";
    case Cmp::Eq:
      return "=";
  }
  return "?";
}

struct IntTerm::Node {
  Op op = Op::Const;
  std::int64_t value = 0;
  Symbol name;
  IntTerm lhs;
  IntTerm rhs;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

// Leaves of the zero constant are shared; IntTerm() must not recurse into itself.
IntTerm::IntTerm() {
  static const std::shared_ptr<const Node> zero = [] {
    auto n = std::shared_ptr<Node>(new Node{Op::Const, 0, Symbol(), IntTerm(nullptr), IntTerm(nullptr), 0});
    n->hash = mix(0, 0);
    return n;
  }();
  node_ = zero;
}

IntTerm IntTerm::constant(std::int64_t value) {
  auto n = std::shared_ptr<Node>(new Node{Op::Const, value, Symbol(), IntTerm(nullptr), IntTerm(nullptr), 0});
  n->hash = mix(0, static_cast<std::size_t>(value));
  return IntTerm(std::move(n));
}

IntTerm IntTerm::var(std::string_view name) {
  Symbol s(name);
  auto n = std::shared_ptr<Node>(new Node{Op::Var, 0, s, IntTerm(nullptr), IntTerm(nullptr), 0});
  n->hash = mix(1, std::hash<std::string>{}(s.str()));
  return IntTerm(std::move(n));
}

IntTerm IntTerm::binary(Op op, IntTerm lhs, IntTerm rhs) {
  if (op == Op::Const || op == Op::Var) throw FormulaError("IntTerm::binary needs an arithmetic operator");
  const std::size_t h = mix(mix(static_cast<std::size_t>(op), lhs.hash()), rhs.hash());
  auto n = std::shared_ptr<Node>(new Node{op, 0, Symbol(), std::move(lhs), std::move(rhs), h});
  return IntTerm(std::move(n));
}

IntTerm::Op IntTerm::op() const noexcept { return node_->op; }
std::int64_t IntTerm::value() const noexcept { return node_->value; }
Symbol IntTerm::name() const noexcept { return node_->name; }
const IntTerm& IntTerm::lhs() const noexcept { return node_->lhs; }
const IntTerm& IntTerm::rhs() const noexcept { return node_->rhs; }
std::size_t IntTerm::hash() const noexcept { return node_->hash; }

bool operator==(const IntTerm& a, const IntTerm& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.op() != b.op()) return false;
  switch (a.op()) {
    case IntTerm::Op::Const:
      return a.value() == b.value();
    case IntTerm::Op::Var:
      return a.name() == b.name();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

std::size_t Atom::hash() const noexcept {
  return mix(mix(static_cast<std::size_t>(op) + 17, lhs.hash()), rhs.hash());
}

std::int64_t floor_divide(std::int64_t a, std::int64_t b) {
  if (b == 0) throw DivisionByZero();
  if (a == std::numeric_limits<std::int64_t>::min() && b == -1) throw ArithmeticError("integer overflow in //");
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t eval_term(const IntTerm& t, const IntModel& a) {
  using Op = IntTerm::Op;
  switch (t.op()) {
    case Op::Const:
      return t.value();
    case Op::Var: {
      auto it = a.find(t.name().str());
      if (it == a.end()) throw UnboundVariable(t.name().str());
      return it->second;
    }
    default:
      break;
  }
  const std::int64_t l = eval_term(t.lhs(), a);
  const std::int64_t r = eval_term(t.rhs(), a);
  std::int64_t out = 0;
  bool overflow = false;
  switch (t.op()) {
    case Op::Add:
      overflow = __builtin_add_overflow(l, r, &out);
      break;
    case Op::Sub:
      overflow = __builtin_sub_overflow(l, r, &out);
      break;
    case Op::Mul:
      overflow = __builtin_mul_overflow(l, r, &out);
      break;
    case Op::FloorDiv:
      return floor_divide(l, r);
    default:
      break;
  }
  if (overflow) throw ArithmeticError("integer overflow");
  return out;
}

bool eval_atom(const Atom& at, const IntModel& a) {
  const std::int64_t l = eval_term(at.lhs, a);
  const std::int64_t r = eval_term(at.rhs, a);
  switch (at.op) {
    case Cmp::Gt:
      return l > r;
    case Cmp::Lt:
      return l < r;
    case Cmp::Le:
      return l <= r;
    case Cmp::Ge:
      return l >= r;
    case Cmp::Eq:
      return l == r;
  }
  return false;
}

void collect_int_vars(const IntTerm& t, std::vector<Symbol>& out) {
  if (t.op() == IntTerm::Op::Var) {
    if (std::ranges::find(out, t.name()) == out.end()) out.push_back(t.name());
    return;
  }
  if (t.is_leaf()) return;
  collect_int_vars(t.lhs(), out);
  collect_int_vars(t.rhs(), out);
}

namespace {

int term_strength(const IntTerm& t) {
  switch (t.op()) {
    case IntTerm::Op::Add:
    case IntTerm::Op::Sub:
      return 1;
    case IntTerm::Op::Mul:
    case IntTerm::Op::FloorDiv:
      return 2;
    default:
      return 3;
  }
}

void render_term(std::ostream& os, const IntTerm& t) {
  using Op = IntTerm::Op;
  switch (t.op()) {
    case Op::Const:
      os << t.value();
      return;
    case Op::Var:
      os << t.name();
      return;
    default:
      break;
  }
  const int s = term_strength(t);
  // Operators are left-associative: a right operand of equal strength needs parentheses.
  const bool wrap_l = term_strength(t.lhs()) < s;
  const bool wrap_r = term_strength(t.rhs()) <= s;
  if (wrap_l) os << '(';
  render_term(os, t.lhs());
  if (wrap_l) os << ')';
  switch (t.op()) {
    case Op::Add:
      os << " + ";
      break;
    case Op::Sub:
      os << " - ";
      break;
    case Op::Mul:
      os << " * ";
      break;
    default:
      os << " // ";
      break;
  }
  if (wrap_r) os << '(';
  render_term(os, t.rhs());
  if (wrap_r) os << ')';
}

}  // namespace

std::string render(const IntTerm& t) {
  std::ostringstream os;
  render_term(os, t);
  return os.str();
}

std::string render(const Atom& at) { return render(at.lhs) + " " + std::string(to_string(at.op)) + " " + render(at.rhs); }

SmtFormula::SmtFormula() : skeleton_(Formula::constant(true)) {}

VarId SmtFormula::atom_var(std::size_t index) {
  return VarId(static_cast<std::uint32_t>(index), Symbol("b" + std::to_string(index)));
}

Formula SmtBuilder::atom(Atom at) {
  auto& bucket = by_hash_[at.hash()];
  for (std::size_t i : bucket)
    if (atoms_[i] == at) return Formula::var(SmtFormula::atom_var(i));
  bucket.push_back(atoms_.size());
  atoms_.push_back(std::move(at));
  return Formula::var(SmtFormula::atom_var(atoms_.size() - 1));
}

namespace {

void first_use_order(const Formula& f, std::vector<std::uint32_t>& order, std::vector<bool>& seen) {
  if (f.kind() == Kind::Var) {
    const std::uint32_t i = f.var().index;
    if (i >= seen.size()) throw FormulaError("skeleton variable '" + f.var().name.str() + "' is not an atom");
    if (!seen[i]) {
      seen[i] = true;
      order.push_back(i);
    }
    return;
  }
  for (const Formula& c : f.children()) first_use_order(c, order, seen);
}

Formula renumber(const Formula& f, const std::vector<std::uint32_t>& new_index) {
  switch (f.kind()) {
    case Kind::Const:
      return f;
    case Kind::Var:
      return Formula::var(SmtFormula::atom_var(new_index[f.var().index]));
    case Kind::Not:
      return Formula::negate(renumber(f.child(), new_index));
    default: {
      std::vector<Formula> kids;
      for (const Formula& c : f.children()) kids.push_back(renumber(c, new_index));
      return f.kind() == Kind::And ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
  }
}

}  // namespace

SmtFormula SmtBuilder::build(const Formula& skeleton) const {
  std::vector<std::uint32_t> order;
  std::vector<bool> seen(atoms_.size(), false);
  first_use_order(skeleton, order, seen);
  for (const VarId& v : free_vars(skeleton))
    if (v.name != SmtFormula::atom_var(v.index).name)
      throw FormulaError("skeleton variable '" + v.name.str() + "' is not an atom");

  std::vector<std::uint32_t> new_index(atoms_.size(), 0);
  SmtFormula out;
  for (std::uint32_t k = 0; k < order.size(); ++k) {
    new_index[order[k]] = k;
    out.atoms_.push_back(atoms_[order[k]]);
  }
  out.skeleton_ = renumber(skeleton, new_index);
  for (const Atom& at : out.atoms_) {
    collect_int_vars(at.lhs, out.int_vars_);
    collect_int_vars(at.rhs, out.int_vars_);
  }
  std::ranges::sort(out.int_vars_, [](Symbol a, Symbol b) { return natural_less(a.str(), b.str()); });
  return out;
}

bool smt_holds(const SmtFormula& f, const IntModel& a) {
  Assignment truth;
  for (std::size_t i = 0; i < f.atoms().size(); ++i) {
    try {
      truth.set(static_cast<std::uint32_t>(i), eval_atom(f.atoms()[i], a));
    } catch (const ArithmeticError&) {
      return false;
    }
  }
  return evaluate(f.skeleton(), truth);
}

Abstraction abstract(const SmtFormula& f) {
  Abstraction out{f.skeleton(), {}};
  for (std::size_t i = 0; i < f.atoms().size(); ++i) out.atoms.emplace(SmtFormula::atom_var(i), f.atoms()[i]);
  return out;
}

void DomainBounds::set(std::string_view name, std::int64_t lo, std::int64_t hi) {
  if (lo > hi)
    throw BoundsError("empty range for '" + std::string(name) + "': " + std::to_string(lo) + ".." +
                      std::to_string(hi));
  ranges_.insert_or_assign(std::string(name), Range{lo, hi});
}

std::optional<Range> DomainBounds::get(std::string_view name) const {
  auto it = ranges_.find(name);
  if (it == ranges_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view context) {
  s = trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw BoundsError("bad integer '" + std::string(s) + "' in '" + std::string(context) + "'");
  return v;
}

}  // namespace

DomainBounds DomainBounds::parse(std::string_view text) {
  DomainBounds out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = trim(text.substr(start, end - start));
    start = end + 1;
    if (item.empty()) {
      if (end == text.size()) break;
      throw BoundsError("empty entry in bounds '" + std::string(text) + "'");
    }
    const auto eq = item.find('=');
    const auto dots = item.find("..", eq == std::string_view::npos ? 0 : eq);
    if (eq == std::string_view::npos || dots == std::string_view::npos)
      throw BoundsError("expected name=lo..hi, got '" + std::string(item) + "'");
    std::string_view name = trim(item.substr(0, eq));
    if (name.empty()) throw BoundsError("missing variable name in '" + std::string(item) + "'");
    out.set(name, parse_int(item.substr(eq + 1, dots - eq - 1), item), parse_int(item.substr(dots + 2), item));
  }
  return out;
}

std::string DomainBounds::to_string() const {
  std::string out;
  for (const auto& [name, r] : ranges_) {
    if (!out.empty()) out += ',';
    out += name + "=" + std::to_string(r.lo) + ".." + std::to_string(r.hi);
  }
  return out;
}

std::vector<Range> DomainBounds::resolve(const std::vector<Symbol>& vars) const {
  std::vector<Range> out;
  out.reserve(vars.size());
  for (Symbol v : vars) {
    auto r = get(v.str());
    if (!r) throw BoundsError("missing bound for variable '" + v.str() + "'");
    out.push_back(*r);
  }
  return out;
}

}  // namespace edusat
