// SPDX-License-Identifier: Apache-2.0
//
// Seeded random formula generators. Every node draws from its own SplitMix64
// stream split off its parent's, so a subtree depends only on the seed and its
// path from the root.

#pragma once

#include <cstdint>

#include "edusat/formula.hpp"
#include "edusat/smt.hpp"

namespace edusat {

/// Internal-node probabilities apply whenever depth budget remains; a leaf is
/// forced only when the budget reaches zero, so every root-to-leaf path has
/// exactly `depth` edges.
struct GenConfig {
  std::uint32_t num_vars = 5;
  std::uint32_t depth = 8;
  double p_not = 0.1;
  double p_and = 0.45;
  double p_or = 0.45;
  std::uint64_t seed = 0;

  /// Throws ConfigError on num_vars == 0, negative probabilities, or a sum off 1 by more than 1e-9.
  void validate() const;
};

Formula gen_bool_tree(const GenConfig& cfg);

struct SmtGenConfig {
  std::uint32_t num_vars = 3;
  /// Boolean skeleton depth; leaves are atoms.
  std::uint32_t depth = 2;
  /// Depth of the arithmetic term on the left of each atom.
  std::uint32_t term_depth = 1;
  std::int64_t coeff_lo = -10;
  std::int64_t coeff_hi = 10;
  double p_not = 0.1;
  double p_and = 0.45;
  double p_or = 0.45;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Atoms compare an arithmetic term with a variable or constant. Divisors of
/// `//` are always nonzero constants, so generated atoms are defined everywhere.
SmtFormula gen_smt_formula(const SmtGenConfig& cfg);

}  // namespace edusat
