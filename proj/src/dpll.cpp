// SPDX-License-Identifier: Apache-2.0

#include "edusat/dpll.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <span>

namespace edusat {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void fill_false(Assignment& a, std::span<const VarId> vars) {
  for (const VarId& v : vars)
    if (!a.contains(v.index)) a.set(v, false);
}

// --- naive ------------------------------------------------------------------

class NaiveSearch {
 public:
  NaiveSearch(const Formula& f, SolveMode mode) : f_(f), vars_(free_vars(f)), mode_(mode) {}

  SatOutcome run() {
    descend(0);
    SatOutcome out;
    out.stats = stats_;
    out.result.models = std::move(models_);
    out.result.status = out.result.models.empty() ? SatStatus::Unsat : SatStatus::Sat;
    return out;
  }

 private:
  // Returns true when the search should stop.
  bool descend(std::size_t k) {
    if (k == vars_.size()) {
      if (!evaluate(f_, current_)) return false;
      models_.push_back(current_);
      return mode_ == SolveMode::Single;
    }
    ++stats_.decisions;
    for (bool value : {false, true}) {
      current_.set(vars_[k], value);
      if (descend(k + 1)) return true;
    }
    current_.unset(vars_[k].index);
    return false;
  }

  const Formula& f_;
  std::vector<VarId> vars_;
  SolveMode mode_;
  Assignment current_;
  std::vector<Assignment> models_;
  SolverStats stats_;
};

// --- DPLL -------------------------------------------------------------------

struct Scan {
  // Polarity bits per variable index: 1 = seen positive, 2 = seen negative.
  std::vector<std::uint8_t> polarity;
  std::vector<VarId> names;
  std::uint32_t lowest = std::numeric_limits<std::uint32_t>::max();

  void note(const Literal& l) {
    const std::uint32_t i = l.var.index;
    if (i >= polarity.size()) {
      polarity.resize(i + 1, 0);
      names.resize(i + 1);
    }
    polarity[i] |= l.positive ? 1 : 2;
    names[i] = l.var;
    lowest = std::min(lowest, i);
  }
};

void scan_literals(const Formula& f, Scan& s) {
  if (f.is_literal()) {
    s.note(f.as_literal());
    return;
  }
  for (const Formula& c : f.children()) scan_literals(c, s);
}

std::optional<Literal> pure_from(const Scan& s) {
  for (std::uint32_t i = 0; i < s.polarity.size(); ++i) {
    if (s.polarity[i] == 1) return Literal{s.names[i], true};
    if (s.polarity[i] == 2) return Literal{s.names[i], false};
  }
  return std::nullopt;
}

using CubeSink = std::function<Visit(const Assignment&)>;

// Tree-rewriting DPLL: every step materializes the conditioned formula.
class ReferenceSearch {
 public:
  ReferenceSearch(const Formula& f, bool use_pure, CubeSink sink)
      : root_(simplify(to_nnf(f))), vars_(free_vars(f)), use_pure_(use_pure), sink_(std::move(sink)) {}

  SolverStats run() {
    search(root_);
    return stats_;
  }

  const std::vector<VarId>& vars() const { return vars_; }

 private:
  bool all_assigned() const {
    return std::ranges::all_of(vars_, [&](const VarId& v) { return current_.contains(v.index); });
  }

  void assign(const Literal& l, std::vector<std::uint32_t>& trail) {
    current_.set(l.var, l.positive);
    trail.push_back(l.var.index);
  }

  // Returns true when the search should stop.
  bool search(Formula g) {
    std::vector<std::uint32_t> trail;
    auto undo = [&] {
      for (std::uint32_t i : trail) current_.unset(i);
    };
    for (;;) {
      if (g.is_const()) {
        if (!all_assigned()) ++stats_.early_terminations;
        const bool stop = g.value() && sink_(current_) == Visit::Stop;
        undo();
        return stop;
      }
      if (auto unit = find_unit_literal(g)) {
        assign(*unit, trail);
        ++stats_.unit_propagations;
        g = condition(g, unit->var, unit->positive);
        continue;
      }
      break;
    }

    Scan scan;
    scan_literals(g, scan);
    if (use_pure_) {
      if (auto pure = pure_from(scan)) {
        assign(*pure, trail);
        ++stats_.pure_literal_assignments;
        const bool stop = search(condition(g, pure->var, pure->positive));
        undo();
        return stop;
      }
    }

    const VarId v = scan.names[scan.lowest];
    ++stats_.decisions;
    bool stop = false;
    for (bool value : {false, true}) {
      current_.set(v, value);
      if (search(condition(g, v, value))) {
        stop = true;
        break;
      }
    }
    current_.unset(v.index);
    undo();
    return stop;
  }

  Formula root_;
  std::vector<VarId> vars_;
  bool use_pure_;
  CubeSink sink_;
  Assignment current_;
  SolverStats stats_;
};


// NNF compiled to a flat post-order array. Values under the current partial
// assignment are recomputed in one pass per search node, and the residual
// formula that condition() would build is read off those values: false
// conjuncts and true disjuncts are gone, a connective with one undecided child
// stands for that child, and an undecided And inside an And is spliced into
// its parent. Search decisions therefore match ReferenceSearch step for step.
class CompiledSearch {
 public:
  CompiledSearch(const Formula& f, bool use_pure, CubeSink sink)
      : use_pure_(use_pure), sink_(std::move(sink)) {
    nodes_.reserve(256);
    kids_.reserve(256);
    root_ = compile(f, false);
    // Lit nodes hold variable indices until the slots are known.
    vars_ = unique_vars(std::move(vars_));
    std::uint32_t max_index = 0;
    for (const VarId& v : vars_) max_index = std::max(max_index, v.index);
    std::vector<std::uint32_t> slot_of(vars_.empty() ? 0 : max_index + 1, 0);
    for (std::uint32_t s = 0; s < vars_.size(); ++s) slot_of[vars_[s].index] = s;
    for (Node& n : nodes_)
      if (n.op == Op::Lit) n.slot = slot_of[n.slot];
    value_of_slot_.assign(vars_.size(), kUnknown);
    polarity_.assign(vars_.size(), 0);
    val_.resize(nodes_.size());
  }

  SolverStats run() {
    search();
    return stats_;
  }

  const std::vector<VarId>& vars() const { return vars_; }

 private:
  static constexpr std::int8_t kUnknown = -1;
  enum class Op : std::uint8_t { False, True, Lit, And, Or };

  struct Node {
    Op op;
    bool positive;        // Lit only
    std::uint32_t slot;   // Lit only: position in vars_
    std::uint32_t first;  // And/Or: children are kids_[first, first + count)
    std::uint32_t count;
  };

  std::uint32_t add(Node n) {
    nodes_.push_back(n);
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  }

  std::uint32_t compile(const Formula& f, bool negated) {
    switch (f.kind()) {
      case Kind::Const:
        return add({f.value() != negated ? Op::True : Op::False, false, 0, 0, 0});
      case Kind::Var:
        vars_.push_back(f.var());
        return add({Op::Lit, !negated, f.var().index, 0, 0});
      case Kind::Not:
        return compile(f.child(), !negated);
      default: {
        const Op op = (f.kind() == Kind::And) != negated ? Op::And : Op::Or;
        const auto children = f.children();
        const auto first = static_cast<std::uint32_t>(kids_.size());
        kids_.resize(kids_.size() + children.size());
        for (std::size_t k = 0; k < children.size(); ++k) {
          const std::uint32_t id = compile(children[k], negated);
          kids_[first + k] = id;
        }
        return add({op, false, 0, first, static_cast<std::uint32_t>(children.size())});
      }
    }
  }

  std::span<const std::uint32_t> kids(const Node& n) const { return {kids_.data() + n.first, n.count}; }

  // Kleene value of node `id`, short-circuiting. Every child of an undecided
  // connective gets a fresh value; other entries of val_ may be stale.
  std::int8_t evaluate(std::uint32_t id) {
    const Node& n = nodes_[id];
    std::int8_t v = kUnknown;
    switch (n.op) {
      case Op::False: v = 0; break;
      case Op::True: v = 1; break;
      case Op::Lit: {
        const std::int8_t a = value_of_slot_[n.slot];
        v = a == kUnknown ? kUnknown : static_cast<std::int8_t>((a != 0) == n.positive);
        break;
      }
      case Op::And:
      case Op::Or: {
        const std::int8_t absorbing = n.op == Op::Or ? 1 : 0;
        v = static_cast<std::int8_t>(1 - absorbing);
        for (std::uint32_t k : kids(n)) {
          const std::int8_t c = evaluate(k);
          if (c == absorbing) {
            v = absorbing;
            break;
          }
          if (c == kUnknown) v = kUnknown;
        }
        break;
      }
    }
    val_[id] = v;
    return v;
  }

  // Follows connectives that have exactly one undecided child.
  std::uint32_t collapse(std::uint32_t id) const {
    for (;;) {
      const Node& n = nodes_[id];
      if (n.op != Op::And && n.op != Op::Or) return id;
      std::uint32_t only = 0;
      std::size_t open = 0;
      for (std::uint32_t k : kids(n))
        if (val_[k] == kUnknown && open++ == 0) only = k;
      if (open != 1) return id;
      id = only;
    }
  }

  // First literal among the flattened undecided conjuncts of And node `id`.
  std::optional<std::uint32_t> first_conjunct_literal(std::uint32_t id) const {
    for (std::uint32_t k : kids(nodes_[id])) {
      if (val_[k] != kUnknown) continue;
      const std::uint32_t c = collapse(k);
      if (nodes_[c].op == Op::Lit) return c;
      if (nodes_[c].op == Op::And)
        if (auto lit = first_conjunct_literal(c)) return lit;
    }
    return std::nullopt;
  }

  std::optional<std::uint32_t> unit_literal() const {
    const std::uint32_t r = collapse(root_);
    if (nodes_[r].op == Op::Lit) return r;
    if (nodes_[r].op == Op::And) return first_conjunct_literal(r);
    return std::nullopt;
  }

  // Marks polarities of the undecided literals still present in the residual formula.
  void scan_residual() {
    std::ranges::fill(polarity_, 0);
    stack_.clear();
    stack_.push_back(root_);
    while (!stack_.empty()) {
      const Node& n = nodes_[stack_.back()];
      stack_.pop_back();
      if (n.op == Op::Lit) {
        polarity_[n.slot] |= n.positive ? 1 : 2;
        continue;
      }
      for (std::uint32_t k : kids(n))
        if (val_[k] == kUnknown) stack_.push_back(k);
    }
  }

  void assign(std::uint32_t slot, bool value) {
    value_of_slot_[slot] = value ? 1 : 0;
    current_.set(vars_[slot], value);
    trail_.push_back(slot);
  }

  void unassign(std::uint32_t slot) {
    value_of_slot_[slot] = kUnknown;
    current_.unset(vars_[slot].index);
  }

  // Returns true when the search should stop.
  bool search() {
    const std::size_t mark = trail_.size();
    auto undo = [&] {
      while (trail_.size() > mark) {
        unassign(trail_.back());
        trail_.pop_back();
      }
    };
    for (;;) {
      if (evaluate(root_) != kUnknown) {
        if (current_.size() != vars_.size()) ++stats_.early_terminations;
        const bool stop = val_[root_] == 1 && sink_(current_) == Visit::Stop;
        undo();
        return stop;
      }
      if (auto unit = unit_literal()) {
        assign(nodes_[*unit].slot, nodes_[*unit].positive);
        ++stats_.unit_propagations;
        continue;
      }
      break;
    }

    scan_residual();
    if (use_pure_) {
      for (std::uint32_t s = 0; s < polarity_.size(); ++s) {
        if (polarity_[s] != 1 && polarity_[s] != 2) continue;
        assign(s, polarity_[s] == 1);
        ++stats_.pure_literal_assignments;
        const bool stop = search();
        undo();
        return stop;
      }
    }

    const auto lowest = static_cast<std::uint32_t>(
        std::ranges::find_if(polarity_, [](std::uint8_t p) { return p != 0; }) - polarity_.begin());
    ++stats_.decisions;
    bool stop = false;
    for (bool value : {false, true}) {
      value_of_slot_[lowest] = value ? 1 : 0;
      current_.set(vars_[lowest], value);
      stop = search();
      unassign(lowest);
      if (stop) break;
    }
    undo();
    return stop;
  }

  std::vector<VarId> vars_;
  bool use_pure_;
  CubeSink sink_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> kids_;
  std::uint32_t root_ = 0;
  std::vector<std::int8_t> val_;
  std::vector<std::int8_t> value_of_slot_;
  std::vector<std::uint8_t> polarity_;
  std::vector<std::uint32_t> stack_;
  std::vector<std::uint32_t> trail_;  // slots assigned by unit and pure steps
  Assignment current_;
  SolverStats stats_;
};

template <class Search>
SatOutcome solve_with(const Formula& f, SolveMode mode) {
  const auto start = Clock::now();
  SatOutcome out;
  std::vector<VarId> vars;
  auto sink = [&](const Assignment& cube) {
    if (mode == SolveMode::Single) {
      Assignment model = cube;
      fill_false(model, vars);
      out.result.models.push_back(std::move(model));
      return Visit::Stop;
    }
    auto expanded = expand_cube(cube, vars);
    out.result.models.insert(out.result.models.end(), std::make_move_iterator(expanded.begin()),
                             std::make_move_iterator(expanded.end()));
    return Visit::Continue;
  };
  Search search(f, mode == SolveMode::Single, sink);
  vars = search.vars();
  out.stats = search.run();
  std::ranges::sort(out.result.models);
  out.result.status = out.result.models.empty() ? SatStatus::Unsat : SatStatus::Sat;
  out.stats.wall_time = seconds_since(start);
  return out;
}

}  // namespace

std::optional<Literal> find_unit_literal(const Formula& f) {
  if (f.is_literal()) return f.as_literal();
  if (f.kind() != Kind::And) return std::nullopt;
  for (const Formula& c : f.children())
    if (c.is_literal()) return c.as_literal();
  return std::nullopt;
}

std::optional<Literal> find_pure_literal(const Formula& f) {
  Scan s;
  scan_literals(f, s);
  return pure_from(s);
}

std::vector<Assignment> expand_cube(const Assignment& cube, std::span<const VarId> vars) {
  std::vector<const VarId*> free;
  for (const VarId& v : vars)
    if (!cube.contains(v.index)) free.push_back(&v);
  std::vector<Assignment> out;
  out.reserve(std::size_t{1} << free.size());
  for (std::size_t mask = 0; mask < (std::size_t{1} << free.size()); ++mask) {
    Assignment a = cube;
    for (std::size_t k = 0; k < free.size(); ++k) a.set(*free[k], ((mask >> (free.size() - 1 - k)) & 1u) != 0);
    out.push_back(std::move(a));
  }
  return out;
}

SatOutcome solve_naive(const Formula& f, SolveMode mode) {
  const auto start = Clock::now();
  SatOutcome out = NaiveSearch(f, mode).run();
  std::ranges::sort(out.result.models);
  out.stats.wall_time = seconds_since(start);
  return out;
}

SatOutcome solve_dpll(const Formula& f, SolveMode mode) { return solve_with<CompiledSearch>(f, mode); }

SatOutcome solve_dpll_reference(const Formula& f, SolveMode mode) { return solve_with<ReferenceSearch>(f, mode); }

SolverStats for_each_cube(const Formula& f, const std::function<Visit(const Assignment&)>& visit) {
  return CompiledSearch(f, false, visit).run();
}

SolverStats for_each_cube_reference(const Formula& f, const std::function<Visit(const Assignment&)>& visit) {
  return ReferenceSearch(f, false, visit).run();
}

}  // namespace edusat
