// SPDX-License-Identifier: Apache-2.0

#include "edusat/batch.hpp"

#include <algorithm>

#include "edusat/robdd.hpp"

namespace edusat {

namespace {

BatchRecord solve_one(const Formula& f, SolveMode mode, std::span<const Engine> engines) {
  BatchRecord rec;
  for (Engine e : engines) {
    rec.runs.push_back(run_engine(e, f, mode));
    for (const Assignment& m : rec.runs.back().result.models) rec.verified = rec.verified && evaluate(f, m);
  }
  for (const EngineRun& r : rec.runs) {
    const SatResult& first = rec.runs.front().result;
    if (r.result.status != first.status) rec.agree = false;
    if (mode == SolveMode::All && r.result.models != first.models) rec.agree = false;
  }
  return rec;
}

BatchReport summarize(std::vector<BatchRecord> records, std::span<const Engine> engines) {
  BatchReport out;
  for (Engine e : engines) out.totals.push_back(EngineTotals{e, 0.0, 0, 0});
  for (const BatchRecord& rec : records) {
    for (std::size_t k = 0; k < rec.runs.size(); ++k) {
      out.totals[k].wall_time += rec.runs[k].wall_time;
      out.totals[k].decisions += rec.runs[k].decisions;
      out.totals[k].sat += rec.runs[k].result.sat() ? 1 : 0;
    }
  }
  out.records = std::move(records);
  return out;
}

}  // namespace

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::Naive: return "naive";
    case Engine::Dpll: return "dpll";
    case Engine::Robdd: return "robdd";
  }
  return "?";
}

std::optional<Engine> engine_from_string(std::string_view name) {
  for (Engine e : {Engine::Naive, Engine::Dpll, Engine::Robdd})
    if (to_string(e) == name) return e;
  return std::nullopt;
}

EngineRun run_engine(Engine e, const Formula& f, SolveMode mode) {
  EngineRun run;
  run.engine = e;
  if (e == Engine::Robdd) {
    RobddOutcome out = solve_robdd(f, mode);
    run.result = std::move(out.result);
    run.wall_time = out.wall_time;
    return run;
  }
  SatOutcome out = e == Engine::Naive ? solve_naive(f, mode) : solve_dpll(f, mode);
  run.result = std::move(out.result);
  run.wall_time = out.stats.wall_time;
  run.decisions = out.stats.decisions;
  return run;
}

bool BatchReport::all_verified() const {
  return std::ranges::all_of(records, &BatchRecord::verified);
}

bool BatchReport::all_agree() const { return std::ranges::all_of(records, &BatchRecord::agree); }

double BatchReport::accuracy() const {
  if (records.empty()) return 1.0;
  const auto good = std::ranges::count_if(records, [](const BatchRecord& r) { return r.verified && r.agree; });
  return static_cast<double>(good) / static_cast<double>(records.size());
}

std::vector<Formula> generate_batch(const GenConfig& base, std::size_t count) {
  std::vector<Formula> out;
  out.reserve(count);
  GenConfig cfg = base;
  for (std::size_t i = 0; i < count; ++i) {
    cfg.seed = base.seed + i;
    out.push_back(gen_bool_tree(cfg));
  }
  return out;
}

BatchReport run_batch(std::span<const Formula> formulas, SolveMode mode, std::span<const Engine> engines) {
  std::vector<BatchRecord> records(formulas.size());
  const auto n = static_cast<std::ptrdiff_t>(formulas.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < n; ++i) records[i] = solve_one(formulas[i], mode, engines);
  return summarize(std::move(records), engines);
}

BatchReport run_batch_serial(std::span<const Formula> formulas, SolveMode mode, std::span<const Engine> engines) {
  std::vector<BatchRecord> records;
  records.reserve(formulas.size());
  for (const Formula& f : formulas) records.push_back(solve_one(f, mode, engines));
  return summarize(std::move(records), engines);
}

}  // namespace edusat
