// SPDX-License-Identifier: Apache-2.0

#include "edusat/smt_solver.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <optional>

#include "edusat/error.hpp"
#include "edusat/rng.hpp"

namespace edusat {

std::string_view to_string(SmtStatus s) {
  switch (s) {
    case SmtStatus::Sat: return "SAT";
    case SmtStatus::UnsatInRange: return "UNSAT_IN_RANGE";
    case SmtStatus::Unknown: return "UNKNOWN";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;
constexpr std::uint32_t kNoSlot = std::numeric_limits<std::uint32_t>::max();

// Postfix program for one term; variables are read from a slot vector.
class TermCode {
 public:
  TermCode(const IntTerm& t, const std::vector<Symbol>& vars, std::vector<std::uint32_t>& slots) {
    emit(t, vars, slots);
  }

  std::optional<std::int64_t> run(const std::vector<std::int64_t>& values, std::vector<std::int64_t>& stack) const {
    stack.clear();
    for (const Instr& in : code_) {
      if (in.op == IntTerm::Op::Const) {
        stack.push_back(in.value);
        continue;
      }
      if (in.op == IntTerm::Op::Var) {
        stack.push_back(values[in.slot]);
        continue;
      }
      const std::int64_t r = stack.back();
      stack.pop_back();
      std::int64_t& l = stack.back();
      bool overflow = false;
      switch (in.op) {
        case IntTerm::Op::Add: overflow = __builtin_add_overflow(l, r, &l); break;
        case IntTerm::Op::Sub: overflow = __builtin_sub_overflow(l, r, &l); break;
        case IntTerm::Op::Mul: overflow = __builtin_mul_overflow(l, r, &l); break;
        default:
          if (r == 0 || (r == -1 && l == std::numeric_limits<std::int64_t>::min())) return std::nullopt;
          l = floor_divide(l, r);
          break;
      }
      if (overflow) return std::nullopt;
    }
    return stack.back();
  }

 private:
  struct Instr {
    IntTerm::Op op;
    std::int64_t value = 0;
    std::uint32_t slot = 0;
  };

  void emit(const IntTerm& t, const std::vector<Symbol>& vars, std::vector<std::uint32_t>& slots) {
    switch (t.op()) {
      case IntTerm::Op::Const: code_.push_back({t.op(), t.value(), 0}); return;
      case IntTerm::Op::Var: {
        const auto it = std::ranges::lower_bound(vars, t.name(), [](Symbol a, Symbol b) {
          return natural_less(a.str(), b.str());
        });
        const auto slot = static_cast<std::uint32_t>(it - vars.begin());
        code_.push_back({t.op(), 0, slot});
        slots.push_back(slot);
        return;
      }
      default:
        emit(t.lhs(), vars, slots);
        emit(t.rhs(), vars, slots);
        code_.push_back({t.op(), 0, 0});
    }
  }

  std::vector<Instr> code_;
};

struct CompiledAtom {
  Cmp op;
  TermCode lhs;
  TermCode rhs;
  std::vector<std::uint32_t> slots;  // sorted, distinct
  std::uint32_t last_slot = kNoSlot;
};

// 1 true, 0 false, -1 undefined.
using Truth = std::int8_t;

class CompiledFormula {
 public:
  explicit CompiledFormula(const SmtFormula& f) : vars_(f.int_vars()), nnf_(to_nnf(f.skeleton())) {
    for (const Atom& a : f.atoms()) {
      std::vector<std::uint32_t> slots;
      TermCode lhs(a.lhs, vars_, slots);
      TermCode rhs(a.rhs, vars_, slots);
      std::ranges::sort(slots);
      slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
      const std::uint32_t last = slots.empty() ? kNoSlot : slots.back();
      atoms_.push_back(CompiledAtom{a.op, std::move(lhs), std::move(rhs), std::move(slots), last});
    }
  }

  const std::vector<Symbol>& vars() const { return vars_; }
  const std::vector<CompiledAtom>& atoms() const { return atoms_; }

  Truth atom_truth(std::size_t i, const std::vector<std::int64_t>& values) const {
    const CompiledAtom& a = atoms_[i];
    const auto l = a.lhs.run(values, stack_);
    if (!l) return -1;
    const auto r = a.rhs.run(values, stack_);
    if (!r) return -1;
    switch (a.op) {
      case Cmp::Gt: return *l > *r;
      case Cmp::Lt: return *l < *r;
      case Cmp::Le: return *l <= *r;
      case Cmp::Ge: return *l >= *r;
      case Cmp::Eq: return *l == *r;
    }
    return -1;
  }

  /// Total conflict count; charged atom ids are appended to `charged` when given.
  std::size_t count(const std::vector<std::int64_t>& values, std::vector<std::size_t>* charged) const {
    truth_.resize(atoms_.size());
    std::size_t undefined = 0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      truth_[i] = atom_truth(i, values);
      if (truth_[i] < 0) {
        ++undefined;
        if (charged) charged->push_back(i);
      }
    }
    const std::size_t deg = degree(nnf_);
    if (charged && deg > 0) collect(nnf_, *charged);
    return deg + undefined;
  }

  IntModel to_model(const std::vector<std::int64_t>& values) const {
    IntModel m;
    for (std::size_t k = 0; k < vars_.size(); ++k) m.emplace(vars_[k].str(), values[k]);
    return m;
  }

 private:
  static std::size_t atom_of(const Formula& lit) {
    return (lit.kind() == Kind::Not ? lit.child() : lit).var().index;
  }

  bool literal_violated(const Formula& lit) const {
    const Truth t = truth_[atom_of(lit)];
    return t < 0 || (t == 1) == (lit.kind() == Kind::Not);
  }

  std::size_t degree(const Formula& g) const {
    switch (g.kind()) {
      case Kind::Const: return g.value() ? 0 : 1;
      case Kind::Var:
      case Kind::Not: return literal_violated(g) ? 1 : 0;
      case Kind::And: {
        std::size_t sum = 0;
        for (const Formula& c : g.children()) sum += degree(c);
        return sum;
      }
      case Kind::Or: {
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (const Formula& c : g.children()) best = std::min(best, degree(c));
        return best;
      }
    }
    return 0;
  }

  void collect(const Formula& g, std::vector<std::size_t>& charged) const {
    switch (g.kind()) {
      case Kind::Const: return;
      case Kind::Var:
      case Kind::Not:
        if (literal_violated(g)) charged.push_back(atom_of(g));
        return;
      case Kind::And:
        for (const Formula& c : g.children()) collect(c, charged);
        return;
      case Kind::Or: {
        const Formula* best = nullptr;
        std::size_t best_degree = std::numeric_limits<std::size_t>::max();
        for (const Formula& c : g.children()) {
          const std::size_t d = degree(c);
          if (d < best_degree) {
            best_degree = d;
            best = &c;
          }
        }
        if (best_degree > 0) collect(*best, charged);
        return;
      }
    }
  }

  std::vector<Symbol> vars_;
  Formula nnf_;
  std::vector<CompiledAtom> atoms_;
  mutable std::vector<std::int64_t> stack_;
  mutable std::vector<Truth> truth_;
};

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

// Chronological backtracking over the integer variables for one Boolean cube.
class BoxSearch {
 public:
  struct Check {
    std::size_t atom;
    Truth required;  // -1: only needs to be defined
  };

  BoxSearch(const CompiledFormula& cf, const std::vector<Range>& ranges, SmtStats& stats)
      : cf_(cf), ranges_(ranges), stats_(stats), values_(ranges.size()), by_slot_(ranges.size()) {}

  // Returns false when the visitor asked to stop.
  template <typename Visitor>
  bool run(const Assignment& cube, Visitor&& visit) {
    for (auto& checks : by_slot_) checks.clear();
    std::vector<Check> ground;
    for (std::size_t i = 0; i < cf_.atoms().size(); ++i) {
      const auto bound = cube.get(static_cast<std::uint32_t>(i));
      const Check c{i, bound ? static_cast<Truth>(*bound) : Truth{-1}};
      const std::uint32_t last = cf_.atoms()[i].last_slot;
      if (last == kNoSlot)
        ground.push_back(c);
      else
        by_slot_[last].push_back(c);
    }
    if (!passes(ground)) return true;
    return descend(0, visit);
  }

 private:
  bool passes(const std::vector<Check>& checks) {
    for (const Check& c : checks) {
      ++stats_.conflicts_examined;
      const Truth t = cf_.atom_truth(c.atom, values_);
      if (t < 0 || (c.required >= 0 && t != c.required)) return false;
    }
    return true;
  }

  template <typename Visitor>
  bool descend(std::size_t k, Visitor& visit) {
    if (k == values_.size()) return visit(values_);
    for (std::int64_t v = ranges_[k].lo;; ++v) {
      ++stats_.iterations;
      values_[k] = v;
      if (passes(by_slot_[k]) && !descend(k + 1, visit)) return false;
      if (v == ranges_[k].hi) break;
    }
    return true;
  }

  const CompiledFormula& cf_;
  const std::vector<Range>& ranges_;
  SmtStats& stats_;
  std::vector<std::int64_t> values_;
  std::vector<std::vector<Check>> by_slot_;
};

}  // namespace

SmtResult solve_backtracking(const SmtFormula& f, const DomainBounds& bounds, SolveMode mode) {
  const auto start = Clock::now();
  const std::vector<Range> ranges = bounds.resolve(f.int_vars());
  const CompiledFormula cf(f);
  SmtResult out;
  BoxSearch search(cf, ranges, out.stats);
  std::set<std::vector<std::int64_t>> found;

  for_each_cube(f.skeleton(), [&](const Assignment& cube) {
    ++out.stats.boolean_models;
    const bool finished = search.run(cube, [&](const std::vector<std::int64_t>& values) {
      found.insert(values);
      return mode == SolveMode::All;
    });
    return finished ? Visit::Continue : Visit::Stop;
  });

  for (const auto& values : found) out.models.push_back(cf.to_model(values));
  out.status = out.models.empty() ? SmtStatus::UnsatInRange : SmtStatus::Sat;
  out.stats.wall_time = seconds_since(start);
  return out;
}

ConflictReport conflicts(const SmtFormula& f, const IntModel& a) {
  const CompiledFormula cf(f);
  std::vector<std::int64_t> values;
  for (const Symbol& v : cf.vars()) {
    const auto it = a.find(v.str());
    if (it == a.end()) throw UnboundVariable(v.str());
    values.push_back(it->second);
  }
  std::vector<std::size_t> charged;
  ConflictReport out;
  out.count = cf.count(values, &charged);
  for (std::size_t atom : charged)
    for (std::uint32_t slot : cf.atoms()[atom].slots) out.vars.insert(cf.vars()[slot].str());
  return out;
}

SmtResult solve_min_conflicts(const SmtFormula& f, const DomainBounds& bounds, std::uint64_t max_steps,
                              std::uint64_t seed) {
  const auto start = Clock::now();
  const std::vector<Range> ranges = bounds.resolve(f.int_vars());
  const CompiledFormula cf(f);
  SplitMix64 rng(seed);
  std::vector<std::int64_t> values;
  for (const Range& r : ranges) values.push_back(rng.between(r.lo, r.hi));

  SmtResult out;
  auto finish = [&](bool sat) {
    out.status = sat ? SmtStatus::Sat : SmtStatus::Unknown;
    if (sat) out.models.push_back(cf.to_model(values));
    out.stats.wall_time = seconds_since(start);
    return out;
  };

  std::vector<std::size_t> charged;
  std::vector<std::uint32_t> conflicted;
  for (std::uint64_t step = 0; step < max_steps; ++step) {
    charged.clear();
    ++out.stats.conflicts_examined;
    if (cf.count(values, &charged) == 0) return finish(true);
    ++out.stats.iterations;

    conflicted.clear();
    for (std::size_t atom : charged)
      for (std::uint32_t slot : cf.atoms()[atom].slots) conflicted.push_back(slot);
    std::ranges::sort(conflicted);
    conflicted.erase(std::unique(conflicted.begin(), conflicted.end()), conflicted.end());
    // Only variable-free atoms are violated: no repair can help.
    if (conflicted.empty()) continue;

    const std::uint32_t slot = conflicted[rng.below(conflicted.size())];
    std::int64_t best_value = ranges[slot].lo;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::int64_t v = ranges[slot].lo;; ++v) {
      values[slot] = v;
      ++out.stats.conflicts_examined;
      const std::size_t c = cf.count(values, nullptr);
      if (c < best) {
        best = c;
        best_value = v;
      }
      if (v == ranges[slot].hi) break;
    }
    values[slot] = best_value;
  }
  ++out.stats.conflicts_examined;
  return finish(cf.count(values, nullptr) == 0);
}

SmtResult solve_smt(const SmtFormula& f, const DomainBounds& bounds, const SmtSolveOptions& opts) {
  if (opts.method == SmtMethod::MinConflicts) return solve_min_conflicts(f, bounds, opts.max_steps, opts.seed);
  return solve_backtracking(f, bounds, opts.mode);
}

}  // namespace edusat
