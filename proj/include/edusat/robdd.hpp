// SPDX-License-Identifier: Apache-2.0
//
// Reduced ordered binary decision diagrams. Two construction paths produce the
// same DAG: the textbook one (complete decision tree, then reduction) and a
// direct Shannon expansion with hash-consing for larger orders.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edusat/dpll.hpp"
#include "edusat/formula.hpp"

namespace edusat {

using NodeId = std::uint32_t;
inline constexpr NodeId kTermFalse = 0;
inline constexpr NodeId kTermTrue = 1;

inline constexpr std::size_t kBdtVarLimit = 20;
inline constexpr std::size_t kRobddVarLimit = 30;

/// `level` is a position in the variable order. Terminals sit at level
/// order().size() and have no children.
struct BddNode {
  std::uint32_t level = 0;
  NodeId low = kTermFalse;
  NodeId high = kTermFalse;

  friend bool operator==(const BddNode&, const BddNode&) = default;
};

/// Complete binary decision tree stored as its leaf row: leaf `i` is reached
/// by taking the high edge at level k exactly when bit (n-1-k) of `i` is set.
class Bdt {
 public:
  Bdt(std::vector<VarId> order, std::vector<std::uint8_t> leaves);

  const std::vector<VarId>& order() const noexcept { return order_; }
  std::span<const std::uint8_t> leaves() const noexcept { return leaves_; }
  bool leaf(std::size_t path) const { return leaves_.at(path) != 0; }
  /// Decision nodes plus leaves: 2^(n+1) - 1.
  std::size_t node_count() const noexcept { return 2 * leaves_.size() - 1; }

 private:
  std::vector<VarId> order_;
  std::vector<std::uint8_t> leaves_;
};

class Robdd {
 public:
  const std::vector<VarId>& order() const noexcept { return order_; }
  NodeId root() const noexcept { return root_; }
  /// Whole store including both terminals and any unreachable entries.
  std::span<const BddNode> nodes() const noexcept { return nodes_; }
  const BddNode& node(NodeId id) const { return nodes_.at(id); }
  static bool is_terminal(NodeId id) noexcept { return id <= kTermTrue; }
  const VarId& var(NodeId id) const { return order_.at(node(id).level); }

  /// Same order and same reachable DAG up to renaming of node ids.
  friend bool operator==(const Robdd& a, const Robdd& b);

 private:
  friend class RobddBuilder;
  std::vector<VarId> order_;
  std::vector<BddNode> nodes_;
  NodeId root_ = kTermFalse;
};

/// Throws OrderError if `order` repeats a variable or misses one of `f`, and
/// TooManyVariables above kBdtVarLimit. Extra order variables are allowed.
Bdt build_bdt(const Formula& f, std::vector<VarId> order);

/// Bottom-up elimination and isomorphism merging over the whole tree.
Robdd reduce(const Bdt& t);

/// Shannon expansion in order, memoized on the conditioned subformula.
/// Same preconditions as build_bdt with the limit kRobddVarLimit.
Robdd build_robdd(const Formula& f, std::vector<VarId> order);

/// Every total assignment over order() reaching the true terminal, sorted.
std::vector<Assignment> all_solutions(const Robdd& d);

/// A shortest root-to-true path as a partial assignment, preferring the low
/// edge on ties; nullopt iff the root is the false terminal.
std::optional<Assignment> single_solution(const Robdd& d);

/// Reachable decision nodes.
std::size_t node_count(const Robdd& d);

/// Reachable nodes renumbered in depth-first post-order (low before high),
/// terminals first. Equal for two diagrams exactly when they are operator==.
std::vector<BddNode> canonical_form(const Robdd& d);

/// Ordering along edges, no node with low == high, no duplicate triple among
/// reachable nodes.
bool well_formed(const Robdd& d);

/// Graphviz digraph of the reachable nodes in store order.
std::string to_dot(const Robdd& d);

enum class BddConstruction { FromBdt, Direct };

struct RobddOutcome {
  SatResult result;
  std::size_t node_count = 0;
  /// Seconds from construction to the end of solution extraction.
  double wall_time = 0.0;
};

/// Uses free_vars(f) as the order. Single mode extends the shortest path with
/// false for the skipped variables so the model is total.
RobddOutcome solve_robdd(const Formula& f, SolveMode mode,
                         BddConstruction how = BddConstruction::FromBdt);

}  // namespace edusat
