// SPDX-License-Identifier: Apache-2.0
//
// Batch solving of many formulas with several engines and cross-checking of
// their answers. The OpenMP kernel distributes formulas over threads; the
// serial version is the reference it is tested against.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "edusat/dpll.hpp"
#include "edusat/formula.hpp"
#include "edusat/generator.hpp"

namespace edusat {

enum class Engine { Naive, Dpll, Robdd };

std::string_view to_string(Engine e);
std::optional<Engine> engine_from_string(std::string_view name);

struct EngineRun {
  Engine engine = Engine::Naive;
  SatResult result;
  /// Seconds spent in the solve call.
  double wall_time = 0.0;
  /// Branching decisions; zero for the ROBDD engine.
  std::uint64_t decisions = 0;
};

EngineRun run_engine(Engine e, const Formula& f, SolveMode mode);

struct BatchRecord {
  std::vector<EngineRun> runs;  // in the requested engine order
  /// Every returned model satisfies the formula.
  bool verified = true;
  /// Same verdict from all engines, and the same model list in All mode.
  bool agree = true;
};

struct EngineTotals {
  Engine engine = Engine::Naive;
  double wall_time = 0.0;
  std::uint64_t decisions = 0;
  std::size_t sat = 0;
};

struct BatchReport {
  std::vector<BatchRecord> records;  // by formula index
  std::vector<EngineTotals> totals;  // in the requested engine order

  bool all_verified() const;
  bool all_agree() const;
  /// Fraction of formulas that are both verified and agreed on.
  double accuracy() const;
};

/// Formula i uses seed base.seed + i.
std::vector<Formula> generate_batch(const GenConfig& base, std::size_t count);

/// OpenMP over formulas when available; results do not depend on the thread count.
BatchReport run_batch(std::span<const Formula> formulas, SolveMode mode, std::span<const Engine> engines);

BatchReport run_batch_serial(std::span<const Formula> formulas, SolveMode mode, std::span<const Engine> engines);

}  // namespace edusat
