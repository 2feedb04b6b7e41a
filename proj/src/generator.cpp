// SPDX-License-Identifier: Apache-2.0

#include "edusat/generator.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "edusat/error.hpp"
#include "edusat/rng.hpp"

namespace edusat {
namespace {

void check_probabilities(double p_not, double p_and, double p_or) {
  if (p_not < 0 || p_and < 0 || p_or < 0) throw ConfigError("node probabilities must be nonnegative");
  if (std::abs(p_not + p_and + p_or - 1.0) > 1e-9)
    throw ConfigError("node probabilities must sum to 1 (got " + std::to_string(p_not + p_and + p_or) + ")");
}

enum class NodeKind { Not, And, Or };

NodeKind draw_kind(SplitMix64& rng, double p_not, double p_and) {
  const double u = rng.unit();
  if (u < p_not) return NodeKind::Not;
  if (u < p_not + p_and) return NodeKind::And;
  return NodeKind::Or;
}

// Builds the Boolean shape shared by both generators; `leaf` makes the leaves.
template <typename Leaf>
Formula grow(std::uint32_t budget, SplitMix64 rng, double p_not, double p_and, Leaf& leaf) {
  if (budget == 0) return leaf(rng);
  switch (draw_kind(rng, p_not, p_and)) {
    case NodeKind::Not:
      return Formula::negate(grow(budget - 1, rng.split(0), p_not, p_and, leaf));
    case NodeKind::And:
      return Formula::conj({grow(budget - 1, rng.split(0), p_not, p_and, leaf),
                            grow(budget - 1, rng.split(1), p_not, p_and, leaf)});
    case NodeKind::Or:
      break;
  }
  return Formula::disj({grow(budget - 1, rng.split(0), p_not, p_and, leaf),
                        grow(budget - 1, rng.split(1), p_not, p_and, leaf)});
}

}  // namespace

void GenConfig::validate() const {
  if (num_vars == 0) throw ConfigError("num_vars must be at least 1");
  check_probabilities(p_not, p_and, p_or);
}

Formula gen_bool_tree(const GenConfig& cfg) {
  cfg.validate();
  auto leaf = [&](SplitMix64& rng) {
    return Formula::var(static_cast<std::uint32_t>(rng.below(cfg.num_vars)));
  };
  return grow(cfg.depth, SplitMix64(cfg.seed), cfg.p_not, cfg.p_and, leaf);
}

void SmtGenConfig::validate() const {
  if (num_vars == 0) throw ConfigError("num_vars must be at least 1");
  if (coeff_lo > coeff_hi) throw ConfigError("invalid coefficient range");
  check_probabilities(p_not, p_and, p_or);
}

namespace {

class SmtLeafMaker {
 public:
  SmtLeafMaker(const SmtGenConfig& cfg, SmtBuilder& builder) : cfg_(cfg), builder_(builder) {}

  Formula operator()(SplitMix64& rng) {
    static constexpr Cmp kOps[] = {Cmp::Gt, Cmp::Lt, Cmp::Le, Cmp::Ge, Cmp::Eq};
    const Cmp op = kOps[rng.below(5)];
    IntTerm lhs = term(cfg_.term_depth, rng);
    IntTerm rhs = operand(rng);
    return builder_.atom(op, std::move(lhs), std::move(rhs));
  }

 private:
  IntTerm variable(SplitMix64& rng) const {
    return IntTerm::var("x" + std::to_string(rng.below(cfg_.num_vars)));
  }

  IntTerm coefficient(SplitMix64& rng) const { return IntTerm::constant(rng.between(cfg_.coeff_lo, cfg_.coeff_hi)); }

  IntTerm operand(SplitMix64& rng) const { return rng.below(2) == 0 ? variable(rng) : coefficient(rng); }

  std::optional<std::int64_t> nonzero_coefficient(SplitMix64& rng) const {
    if (cfg_.coeff_lo == 0 && cfg_.coeff_hi == 0) return std::nullopt;
    for (;;) {
      const std::int64_t c = rng.between(cfg_.coeff_lo, cfg_.coeff_hi);
      if (c != 0) return c;
    }
  }

  IntTerm term(std::uint32_t budget, SplitMix64& rng) const {
    if (budget == 0) return operand(rng);
    using Op = IntTerm::Op;
    static constexpr Op kOps[] = {Op::Add, Op::Sub, Op::Mul, Op::FloorDiv};
    Op op = kOps[rng.below(4)];
    IntTerm lhs = term(budget - 1, rng);
    if (op == Op::FloorDiv) {
      if (auto d = nonzero_coefficient(rng)) return floor_div(std::move(lhs), IntTerm::constant(*d));
      op = Op::Mul;
    }
    return IntTerm::binary(op, std::move(lhs), term(budget - 1, rng));
  }

  const SmtGenConfig& cfg_;
  SmtBuilder& builder_;
};

}  // namespace

SmtFormula gen_smt_formula(const SmtGenConfig& cfg) {
  cfg.validate();
  SmtBuilder builder;
  SmtLeafMaker leaf(cfg, builder);
  const Formula skeleton = grow(cfg.depth, SplitMix64(cfg.seed), cfg.p_not, cfg.p_and, leaf);
  return builder.build(skeleton);
}

}  // namespace edusat
