// SPDX-License-Identifier: Apache-2.0

#include "edusat/robdd.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "edusat/error.hpp"
#include "edusat/truth_table.hpp"

namespace edusat {

namespace {

struct TripleHash {
  std::size_t operator()(const BddNode& n) const noexcept {
    std::uint64_t h = n.level;
    h = h * 0x9e3779b97f4a7c15ULL + n.low;
    h = h * 0x9e3779b97f4a7c15ULL + n.high;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

// Position of each variable index in the order.
class LevelMap {
 public:
  LevelMap(const std::vector<VarId>& order, const Formula& f, std::size_t limit) {
    if (order.size() > limit) throw TooManyVariables(order.size(), limit);
    for (std::uint32_t k = 0; k < order.size(); ++k) {
      const VarId& v = order[k];
      if (v.index >= level_.size()) level_.resize(v.index + 1, kNone);
      if (level_[v.index] != kNone) throw OrderError("variable '" + v.name.str() + "' appears twice in the order");
      level_[v.index] = k;
    }
    for (const VarId& v : free_vars(f)) {
      const std::uint32_t k = at(v.index);
      if (k == kNone || order[k] != v) throw OrderError("variable '" + v.name.str() + "' is missing from the order");
    }
  }

  std::uint32_t at(std::uint32_t index) const { return index < level_.size() ? level_[index] : kNone; }

  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

 private:
  std::vector<std::uint32_t> level_;
};

std::vector<NodeId> reachable(const Robdd& d) {
  std::vector<NodeId> out;
  std::vector<bool> seen(d.nodes().size(), false);
  std::vector<NodeId> stack{d.root()};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    if (seen[id]) continue;
    seen[id] = true;
    out.push_back(id);
    if (!Robdd::is_terminal(id)) {
      stack.push_back(d.node(id).low);
      stack.push_back(d.node(id).high);
    }
  }
  std::ranges::sort(out);
  return out;
}

}  // namespace

class RobddBuilder {
 public:
  explicit RobddBuilder(std::vector<VarId> order) {
    const auto terminal_level = static_cast<std::uint32_t>(order.size());
    d_.order_ = std::move(order);
    d_.nodes_ = {BddNode{terminal_level, kTermFalse, kTermFalse}, BddNode{terminal_level, kTermTrue, kTermTrue}};
  }

  NodeId make(std::uint32_t level, NodeId low, NodeId high) {
    if (low == high) return low;
    const BddNode key{level, low, high};
    auto [it, inserted] = unique_.try_emplace(key, static_cast<NodeId>(d_.nodes_.size()));
    if (inserted) d_.nodes_.push_back(key);
    return it->second;
  }

  Robdd finish(NodeId root) && {
    d_.root_ = root;
    return std::move(d_);
  }

 private:
  Robdd d_;
  std::unordered_map<BddNode, NodeId, TripleHash> unique_;
};

namespace {

class DirectBuilder {
 public:
  DirectBuilder(const std::vector<VarId>& order, const LevelMap& levels)
      : order_(order), levels_(levels), builder_(order) {}

  Robdd run(const Formula& f) && {
    const NodeId root = build(simplify(f));
    return std::move(builder_).finish(root);
  }

 private:
  std::uint32_t top_level(const Formula& g) const {
    if (g.kind() == Kind::Var) return levels_.at(g.var().index);
    std::uint32_t best = LevelMap::kNone;
    for (const Formula& c : g.children()) best = std::min(best, top_level(c));
    return best;
  }

  NodeId build(const Formula& g) {
    if (g.is_const()) return g.value() ? kTermTrue : kTermFalse;
    if (auto it = memo_.find(g); it != memo_.end()) return it->second;
    const std::uint32_t level = top_level(g);
    const VarId& v = order_[level];
    const NodeId low = build(condition(g, v, false));
    const NodeId high = build(condition(g, v, true));
    const NodeId id = builder_.make(level, low, high);
    memo_.emplace(g, id);
    return id;
  }

  const std::vector<VarId>& order_;
  const LevelMap& levels_;
  RobddBuilder builder_;
  std::unordered_map<Formula, NodeId> memo_;
};

}  // namespace

Bdt::Bdt(std::vector<VarId> order, std::vector<std::uint8_t> leaves)
    : order_(std::move(order)), leaves_(std::move(leaves)) {
  if (order_.size() > kBdtVarLimit) throw TooManyVariables(order_.size(), kBdtVarLimit);
  if (leaves_.size() != (std::size_t{1} << order_.size()))
    throw FormulaError("decision tree needs 2^n leaves for n ordered variables");
}

bool operator==(const Robdd& a, const Robdd& b) {
  return a.order_ == b.order_ && canonical_form(a) == canonical_form(b);
}

Bdt build_bdt(const Formula& f, std::vector<VarId> order) {
  LevelMap levels(order, f, kBdtVarLimit);
  std::vector<std::uint8_t> leaves(std::size_t{1} << order.size());
  for (std::size_t path = 0; path < leaves.size(); ++path) leaves[path] = evaluate(f, decode_row(order, path)) ? 1 : 0;
  return Bdt(std::move(order), std::move(leaves));
}

Robdd reduce(const Bdt& t) {
  const auto n = static_cast<std::uint32_t>(t.order().size());
  RobddBuilder builder(t.order());
  std::vector<NodeId> layer(t.leaves().size());
  std::ranges::transform(t.leaves(), layer.begin(), [](std::uint8_t b) { return b ? kTermTrue : kTermFalse; });
  for (std::uint32_t level = n; level-- > 0;) {
    std::vector<NodeId> above(layer.size() / 2);
    for (std::size_t i = 0; i < above.size(); ++i) above[i] = builder.make(level, layer[2 * i], layer[2 * i + 1]);
    layer = std::move(above);
  }
  return std::move(builder).finish(layer[0]);
}

Robdd build_robdd(const Formula& f, std::vector<VarId> order) {
  LevelMap levels(order, f, kRobddVarLimit);
  return DirectBuilder(order, levels).run(f);
}

std::vector<Assignment> all_solutions(const Robdd& d) {
  std::vector<Assignment> out;
  Assignment path;
  auto walk = [&](auto&& self, NodeId id) -> void {
    if (id == kTermFalse) return;
    if (id == kTermTrue) {
      auto expanded = expand_cube(path, d.order());
      out.insert(out.end(), std::make_move_iterator(expanded.begin()), std::make_move_iterator(expanded.end()));
      return;
    }
    const BddNode& n = d.node(id);
    const VarId& v = d.order()[n.level];
    path.set(v, false);
    self(self, n.low);
    path.set(v, true);
    self(self, n.high);
    path.unset(v.index);
  };
  walk(walk, d.root());
  std::ranges::sort(out);
  return out;
}

std::optional<Assignment> single_solution(const Robdd& d) {
  constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();
  // Ids only ever point at smaller ids, so one ascending pass computes distances.
  std::vector<std::size_t> dist(d.nodes().size(), kUnreachable);
  dist[kTermTrue] = 0;
  for (NodeId id = kTermTrue + 1; id < d.nodes().size(); ++id) {
    const std::size_t best = std::min(dist[d.node(id).low], dist[d.node(id).high]);
    if (best != kUnreachable) dist[id] = best + 1;
  }
  if (dist[d.root()] == kUnreachable) return std::nullopt;
  Assignment out;
  for (NodeId id = d.root(); id != kTermTrue;) {
    const BddNode& n = d.node(id);
    const bool take_high = dist[n.high] < dist[n.low];
    out.set(d.order()[n.level], take_high);
    id = take_high ? n.high : n.low;
  }
  return out;
}

std::size_t node_count(const Robdd& d) {
  return static_cast<std::size_t>(std::ranges::count_if(reachable(d), [](NodeId id) { return !Robdd::is_terminal(id); }));
}

std::vector<BddNode> canonical_form(const Robdd& d) {
  const auto terminal_level = static_cast<std::uint32_t>(d.order().size());
  std::vector<BddNode> out{BddNode{terminal_level, kTermFalse, kTermFalse}, BddNode{terminal_level, kTermTrue, kTermTrue}};
  std::unordered_map<NodeId, NodeId> renamed{{kTermFalse, kTermFalse}, {kTermTrue, kTermTrue}};
  auto visit = [&](auto&& self, NodeId id) -> NodeId {
    if (auto it = renamed.find(id); it != renamed.end()) return it->second;
    const BddNode& n = d.node(id);
    const NodeId low = self(self, n.low);
    const NodeId high = self(self, n.high);
    const auto fresh = static_cast<NodeId>(out.size());
    out.push_back(BddNode{n.level, low, high});
    renamed.emplace(id, fresh);
    return fresh;
  };
  // The root's new id is implied: it is the last entry, or a terminal when only terminals exist.
  const NodeId root = visit(visit, d.root());
  if (Robdd::is_terminal(root)) out.push_back(BddNode{terminal_level, root, root});
  return out;
}

bool well_formed(const Robdd& d) {
  const auto terminal_level = d.order().size();
  if (d.nodes().size() < 2 || d.root() >= d.nodes().size()) return false;
  std::unordered_set<BddNode, TripleHash> seen;
  for (NodeId id : reachable(d)) {
    if (Robdd::is_terminal(id)) continue;
    const BddNode& n = d.node(id);
    if (n.low >= d.nodes().size() || n.high >= d.nodes().size()) return false;
    if (n.level >= terminal_level || n.low == n.high) return false;
    if (d.node(n.low).level <= n.level || d.node(n.high).level <= n.level) return false;
    if (!seen.insert(n).second) return false;
  }
  return true;
}

std::string to_dot(const Robdd& d) {
  std::ostringstream os;
  os << "digraph robdd {\n";
  const auto ids = reachable(d);
  for (NodeId id : ids) {
    if (Robdd::is_terminal(id))
      os << "  n" << id << " [label=\"" << (id == kTermTrue ? 1 : 0) << "\", shape=box];\n";
    else
      os << "  n" << id << " [label=\"" << d.var(id).name << "\", shape=circle];\n";
  }
  for (NodeId id : ids) {
    if (Robdd::is_terminal(id)) continue;
    os << "  n" << id << " -> n" << d.node(id).low << " [style=dashed];\n";
    os << "  n" << id << " -> n" << d.node(id).high << " [style=solid];\n";
  }
  os << "}\n";
  return os.str();
}

RobddOutcome solve_robdd(const Formula& f, SolveMode mode, BddConstruction how) {
  const auto start = std::chrono::steady_clock::now();
  const auto order = free_vars(f);
  const Robdd d = how == BddConstruction::FromBdt ? reduce(build_bdt(f, order)) : build_robdd(f, order);
  RobddOutcome out;
  if (mode == SolveMode::All) {
    out.result.models = all_solutions(d);
  } else if (auto path = single_solution(d)) {
    for (const VarId& v : order)
      if (!path->contains(v.index)) path->set(v, false);
    out.result.models.push_back(std::move(*path));
  }
  out.result.status = out.result.models.empty() ? SatStatus::Unsat : SatStatus::Sat;
  out.node_count = node_count(d);
  out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace edusat
