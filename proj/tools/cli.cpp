// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "edusat/batch.hpp"
#include "edusat/dimacs.hpp"
#include "edusat/error.hpp"
#include "edusat/npc.hpp"
#include "edusat/robdd.hpp"
#include "edusat/smt_solver.hpp"

namespace edusat::cli {
namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

class UsageError : public Error {
 public:
  using Error::Error;
};

// Raised after a diagnostic has already been written.
class ValidationFailure : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("EDUSAT_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t seed = 0;
  const std::string_view s(env);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw UsageError("EDUSAT_SEED is not an unsigned integer");
  return seed;
}

SolveMode mode_of(const std::string& s) { return s == "all" ? SolveMode::All : SolveMode::Single; }

std::string seconds(double t) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << t;
  return os.str();
}

// --- formula input -----------------------------------------------------------

struct FormulaInput {
  std::string text;
  std::string file;
  bool dimacs = false;

  void attach(CLI::App* app) {
    app->add_option("formula", text, "Formula in the keyword grammar");
    app->add_option("-f,--file", file, "Read the formula from a file");
    app->add_flag("--dimacs", dimacs, "Input is DIMACS CNF (implied by a .cnf file)");
  }

  Formula load() const {
    if (text.empty() == file.empty()) throw UsageError("give exactly one of a formula or --file");
    const std::string body = file.empty() ? text : read_file(file);
    const bool cnf = dimacs || std::filesystem::path(file).extension() == ".cnf";
    return cnf ? from_dimacs(body) : parse(body);
  }
};

// Names in `names` (comma separated) resolved against the formula's variables.
// A name the formula lacks is accepted when it is spelled x<k> with k unused.
std::vector<VarId> parse_order(const std::string& names, const std::vector<VarId>& vars) {
  std::vector<VarId> order;
  std::size_t start = 0;
  while (start <= names.size()) {
    std::size_t end = names.find(',', start);
    if (end == std::string::npos) end = names.size();
    const std::string name = names.substr(start, end - start);
    start = end + 1;
    if (name.empty()) throw UsageError("empty name in --order");
    auto it = std::ranges::find(vars, Symbol(name), &VarId::name);
    if (it != vars.end()) {
      order.push_back(*it);
      continue;
    }
    std::uint32_t k = 0;
    const bool numbered = name.size() > 1 && name[0] == 'x' &&
                          std::from_chars(name.data() + 1, name.data() + name.size(), k).ptr == name.data() + name.size();
    if (!numbered || std::ranges::find(vars, k, &VarId::index) != vars.end())
      throw UsageError("unknown variable '" + name + "' in --order");
    order.emplace_back(k, Symbol(name));
  }
  return order;
}

// --- solve -------------------------------------------------------------------

struct SolveArgs {
  FormulaInput input;
  std::string engine = "dpll";
  std::string mode = "single";
  std::string format = "text";
  std::string order;
};

struct EngineAnswer {
  std::string engine;
  SatResult result;
  double time = 0.0;
};

EngineAnswer robdd_with_order(const Formula& f, std::vector<VarId> order, SolveMode mode) {
  const auto start = Clock::now();
  const Robdd d = build_robdd(f, std::move(order));
  EngineAnswer a{"robdd", {}, 0.0};
  if (mode == SolveMode::All) {
    a.result.models = all_solutions(d);
  } else if (auto path = single_solution(d)) {
    for (const VarId& v : d.order())
      if (!path->contains(v.index)) path->set(v, false);
    a.result.models.push_back(std::move(*path));
  }
  a.result.status = a.result.models.empty() ? SatStatus::Unsat : SatStatus::Sat;
  a.time = std::chrono::duration<double>(Clock::now() - start).count();
  return a;
}

json model_json(const Assignment& m, const std::vector<VarId>& vars) {
  json obj = json::object();
  for (const auto& [index, value] : m.bindings()) {
    auto it = std::ranges::find(vars, index, &VarId::index);
    obj[it != vars.end() ? it->name.str() : "#" + std::to_string(index)] = value;
  }
  return obj;
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  const Formula f = args.input.load();
  const SolveMode mode = mode_of(args.mode);
  std::vector<VarId> vars = free_vars(f);

  std::vector<EngineAnswer> answers;
  const std::vector<std::string> names =
      args.engine == "all" ? std::vector<std::string>{"naive", "dpll", "robdd"} : std::vector{args.engine};
  for (const std::string& name : names) {
    if (name == "robdd" && !args.order.empty()) {
      std::vector<VarId> order = parse_order(args.order, vars);
      answers.push_back(robdd_with_order(f, order, mode));
      vars = std::move(order);
      continue;
    }
    if (name == "robdd") {
      RobddOutcome o = solve_robdd(f, mode, BddConstruction::Direct);
      answers.push_back({name, std::move(o.result), o.wall_time});
      continue;
    }
    SatOutcome o = name == "naive" ? solve_naive(f, mode) : solve_dpll(f, mode);
    answers.push_back({name, std::move(o.result), o.stats.wall_time});
  }

  for (const EngineAnswer& a : answers) {
    for (const Assignment& m : a.result.models) {
      if (!evaluate(f, m)) {
        err << "error: " << a.engine << " returned a non-model " << format_assignment(m, vars) << " for "
            << render(f) << '\n';
        throw ValidationFailure("invalid model");
      }
    }
  }
  bool agree = true;
  for (const EngineAnswer& a : answers) {
    if (a.result.status != answers.front().result.status) agree = false;
    if (mode == SolveMode::All && a.result.models != answers.front().result.models) agree = false;
  }

  for (const EngineAnswer& a : answers) {
    const char* verdict = a.result.sat() ? "SAT" : "UNSAT";
    if (args.format == "json") {
      json models = json::array();
      for (const Assignment& m : a.result.models) models.push_back(model_json(m, vars));
      out << json{{"engine", a.engine}, {"verdict", verdict}, {"models", models}, {"time_s", a.time}}.dump() << '\n';
      continue;
    }
    out << '[' << a.engine << "] " << verdict << "  models=" << a.result.models.size() << "  time=" << seconds(a.time)
        << "s\n";
    for (const Assignment& m : a.result.models) out << "  " << format_assignment(m, vars) << '\n';
  }
  if (answers.size() > 1) (args.format == "json" ? err : out) << "agreement: " << (agree ? "true" : "false") << '\n';
  if (!agree) {
    err << "error: engines disagree on " << render(f) << '\n';
    return kValidation;
  }
  return answers.front().result.sat() ? kSat : kUnsat;
}

// --- smt ---------------------------------------------------------------------

struct SmtArgs {
  std::string text;
  std::string file;
  std::string bounds;
  std::string method = "backtracking";
  std::uint64_t max_steps = 1000;
  std::optional<std::uint64_t> seed;
  std::string mode = "single";
  std::string format = "text";
};

SmtSolveOptions smt_options(const std::string& method, std::uint64_t max_steps, std::optional<std::uint64_t> seed,
                            const std::string& mode) {
  SmtSolveOptions opts;
  opts.method = method == "minconflicts" ? SmtMethod::MinConflicts : SmtMethod::Backtracking;
  opts.mode = mode_of(mode);
  opts.max_steps = max_steps;
  opts.seed = seed ? *seed : default_seed();
  return opts;
}

std::string format_int_model(const IntModel& m) {
  std::string s;
  for (const auto& [name, value] : m) {
    if (!s.empty()) s += ", ";
    s += name + " = " + std::to_string(value);
  }
  return s;
}

int exit_for(SmtStatus s) {
  switch (s) {
    case SmtStatus::Sat: return kSat;
    case SmtStatus::UnsatInRange: return kUnsat;
    case SmtStatus::Unknown: return kUnknown;
  }
  return kUnknown;
}

int cmd_smt(const SmtArgs& args, std::ostream& out, std::ostream& err) {
  if (args.text.empty() == args.file.empty()) throw UsageError("give exactly one of a formula or --file");
  const SmtFormula f = parse_smt(args.file.empty() ? args.text : read_file(args.file));
  const DomainBounds bounds = DomainBounds::parse(args.bounds);
  const SmtResult r = solve_smt(f, bounds, smt_options(args.method, args.max_steps, args.seed, args.mode));
  for (const IntModel& m : r.models) {
    if (!smt_holds(f, m)) {
      err << "error: " << args.method << " returned a non-model {" << format_int_model(m) << "}\n";
      throw ValidationFailure("invalid model");
    }
  }
  if (args.format == "json") {
    out << json{{"engine", args.method},
                {"verdict", to_string(r.status)},
                {"models", r.models},
                {"time_s", r.stats.wall_time}}
               .dump()
        << '\n';
  } else {
    out << to_string(r.status) << '\n';
    for (const IntModel& m : r.models) out << format_int_model(m) << '\n';
  }
  return exit_for(r.status);
}

// --- npc ---------------------------------------------------------------------

struct NpcArgs {
  std::string problem;
  std::string instance;
  std::string method = "backtracking";
  std::uint64_t max_steps = 1000;
  std::optional<std::uint64_t> seed;
  std::string mode = "single";
  std::string format = "text";
};

int cmd_npc(const NpcArgs& args, std::ostream& out, std::ostream&) {
  const auto problem = problem_from_string(args.problem);
  if (!problem) throw UsageError("unknown problem '" + args.problem + "'");
  // An existing path is read as a file; anything else is the instance text itself.
  const std::string text = std::filesystem::is_regular_file(args.instance) ? read_file(args.instance) : args.instance;
  const Instance inst = parse_instance(*problem, text);
  const NpcOutcome o = solve_instance(inst, smt_options(args.method, args.max_steps, args.seed, args.mode));
  if (args.format == "json") {
    out << json{{"engine", args.method},
                {"verdict", to_string(o.smt.status)},
                {"models", o.smt.models},
                {"time_s", o.smt.stats.wall_time}}
               .dump()
        << '\n';
  } else {
    out << to_string(o.smt.status) << "  solutions=" << o.solutions.size() << '\n';
    for (const DomainSolution& s : o.solutions) out << render(inst, s) << '\n';
  }
  return exit_for(o.smt.status);
}

// --- gen ---------------------------------------------------------------------

struct GenArgs {
  std::string kind;
  std::uint32_t num_vars = 5;
  std::uint32_t depth = 8;
  std::size_t count = 1;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_gen(const GenArgs& args, std::ostream& out) {
  const std::uint64_t seed = args.seed ? *args.seed : default_seed();
  std::string text;
  for (std::size_t i = 0; i < args.count; ++i) {
    if (args.kind == "bool") {
      GenConfig cfg;
      cfg.num_vars = args.num_vars;
      cfg.depth = args.depth;
      cfg.seed = seed + i;
      text += render(gen_bool_tree(cfg)) + '\n';
    } else {
      SmtGenConfig cfg;
      cfg.num_vars = args.num_vars;
      cfg.depth = args.depth;
      cfg.seed = seed + i;
      text += render(gen_smt_formula(cfg)) + '\n';
    }
  }
  write_text(args.out, text, out);
  return 0;
}

// --- viz ---------------------------------------------------------------------

struct VizArgs {
  FormulaInput input;
  std::string order;
  std::string out;
};

int cmd_viz(const VizArgs& args, std::ostream& out, std::ostream& err) {
  const Formula f = args.input.load();
  const std::vector<VarId> vars = free_vars(f);
  const Robdd d = build_robdd(f, args.order.empty() ? vars : parse_order(args.order, vars));
  write_text(args.out, to_dot(d), out);
  err << "nodes: " << node_count(d) << '\n';
  return 0;
}

// --- bench -------------------------------------------------------------------

struct BenchArgs {
  std::string suite;
  std::vector<std::size_t> counts{10, 100, 1000};
  std::uint32_t num_vars = 5;
  std::uint32_t depth = 8;
  std::string mode = "single";
  std::optional<std::uint64_t> seed;
  std::string format = "text";
  bool parallel = false;
};

BatchReport bench_batch(const BenchArgs& args, std::span<const Formula> formulas, SolveMode mode,
                        std::span<const Engine> engines, std::ostream& err) {
  BatchReport r = args.parallel ? run_batch(formulas, mode, engines) : run_batch_serial(formulas, mode, engines);
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const BatchRecord& rec = r.records[i];
    if (rec.verified && rec.agree) continue;
    err << "error: formula " << i << (rec.verified ? " got conflicting answers" : " got a non-model") << ": "
        << render(formulas[i]) << '\n';
    const std::vector<VarId> vars = free_vars(formulas[i]);
    for (const EngineRun& run : rec.runs) {
      err << "  " << to_string(run.engine) << ": " << (run.result.sat() ? "SAT" : "UNSAT");
      for (const Assignment& m : run.result.models) err << ' ' << format_assignment(m, vars);
      err << '\n';
    }
    throw ValidationFailure("bench accuracy check failed");
  }
  return r;
}

std::string percent(double accuracy) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << accuracy * 100.0 << '%';
  return os.str();
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  GenConfig cfg;
  cfg.num_vars = args.num_vars;
  cfg.depth = args.depth;
  cfg.seed = args.seed ? *args.seed : default_seed();
  cfg.validate();
  const bool json_out = args.format == "json";

  if (args.suite == "dpll") {
    constexpr Engine engines[] = {Engine::Naive, Engine::Dpll};
    const SolveMode mode = mode_of(args.mode);
    if (!json_out)
      out << std::left << std::setw(10) << "formulas" << std::setw(12) << "naive (s)" << std::setw(12)
          << "dpll (s)" << std::setw(16) << "naive decisions" << std::setw(16) << "dpll decisions"
          << "accuracy\n";
    for (std::size_t count : args.counts) {
      const auto formulas = generate_batch(cfg, count);
      const BatchReport r = bench_batch(args, formulas, mode, engines, err);
      if (json_out) {
        out << json{{"suite", "dpll"},         {"formulas", count},
                    {"vars", args.num_vars},   {"depth", args.depth},
                    {"mode", args.mode},       {"naive_s", r.totals[0].wall_time},
                    {"dpll_s", r.totals[1].wall_time}, {"naive_decisions", r.totals[0].decisions},
                    {"dpll_decisions", r.totals[1].decisions}, {"accuracy", r.accuracy()}}
                   .dump()
            << '\n';
        continue;
      }
      out << std::left << std::setw(10) << count << std::setw(12) << seconds(r.totals[0].wall_time) << std::setw(12)
          << seconds(r.totals[1].wall_time) << std::setw(16) << r.totals[0].decisions << std::setw(16)
          << r.totals[1].decisions << percent(r.accuracy()) << '\n';
    }
    return 0;
  }

  // The ROBDD answers are cross-checked against DPLL in both modes.
  constexpr Engine engines[] = {Engine::Robdd, Engine::Dpll};
  if (!json_out)
    out << std::left << std::setw(10) << "formulas" << std::setw(6) << "vars" << std::setw(7) << "depth"
        << std::setw(12) << "single (s)" << std::setw(12) << "accuracy" << std::setw(14) << "multiple (s)"
        << "accuracy\n";
  for (std::size_t count : args.counts) {
    const auto formulas = generate_batch(cfg, count);
    const BatchReport single = bench_batch(args, formulas, SolveMode::Single, engines, err);
    const BatchReport multiple = bench_batch(args, formulas, SolveMode::All, engines, err);
    if (json_out) {
      out << json{{"suite", "robdd"},
                  {"formulas", count},
                  {"vars", args.num_vars},
                  {"depth", args.depth},
                  {"single_s", single.totals[0].wall_time},
                  {"single_accuracy", single.accuracy()},
                  {"multiple_s", multiple.totals[0].wall_time},
                  {"multiple_accuracy", multiple.accuracy()}}
                 .dump()
          << '\n';
      continue;
    }
    out << std::left << std::setw(10) << count << std::setw(6) << args.num_vars << std::setw(7) << args.depth
        << std::setw(12) << seconds(single.totals[0].wall_time) << std::setw(12) << percent(single.accuracy())
        << std::setw(14) << seconds(multiple.totals[0].wall_time) << percent(multiple.accuracy()) << '\n';
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Educational SAT, SMT and ROBDD solvers"};
  app.name("edusat");
  app.require_subcommand(1);

  const std::vector<std::string> modes{"single", "all"};
  const std::vector<std::string> formats{"text", "json"};

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve a Boolean formula");
  solve.input.attach(solve_cmd);
  solve_cmd->add_option("-e,--engine", solve.engine)->check(CLI::IsMember({"naive", "dpll", "robdd", "all"}));
  solve_cmd->add_option("-m,--mode", solve.mode)->check(CLI::IsMember(modes));
  solve_cmd->add_option("--format", solve.format)->check(CLI::IsMember(formats));
  solve_cmd->add_option("--order", solve.order, "ROBDD variable order, comma separated");

  SmtArgs smt;
  CLI::App* smt_cmd = app.add_subcommand("smt", "Solve an integer SMT formula inside a box");
  smt_cmd->add_option("formula", smt.text);
  smt_cmd->add_option("-f,--file", smt.file);
  smt_cmd->add_option("--bounds", smt.bounds, "x=lo..hi,...")->required();
  smt_cmd->add_option("--method", smt.method)->check(CLI::IsMember({"backtracking", "minconflicts"}));
  smt_cmd->add_option("--max-steps", smt.max_steps);
  smt_cmd->add_option("--seed", smt.seed);
  smt_cmd->add_option("-m,--mode", smt.mode)->check(CLI::IsMember(modes));
  smt_cmd->add_option("--format", smt.format)->check(CLI::IsMember(formats));

  NpcArgs npc;
  CLI::App* npc_cmd = app.add_subcommand("npc", "Solve an NP-complete problem instance");
  npc_cmd->add_option("problem", npc.problem)
      ->required()
      ->check(CLI::IsMember({"nqueens", "coloring", "subsetsum", "vertexcover", "sudoku"}));
  npc_cmd->add_option("instance", npc.instance, "Instance file, or the instance text itself")->required();
  npc_cmd->add_option("--method", npc.method)->check(CLI::IsMember({"backtracking", "minconflicts"}));
  npc_cmd->add_option("--max-steps", npc.max_steps);
  npc_cmd->add_option("--seed", npc.seed);
  npc_cmd->add_option("-m,--mode", npc.mode)->check(CLI::IsMember(modes));
  npc_cmd->add_option("--format", npc.format)->check(CLI::IsMember(formats));

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate random formulas, one per line");
  gen_cmd->add_option("kind", gen.kind)->required()->check(CLI::IsMember({"bool", "smt"}));
  gen_cmd->add_option("-n,--num-vars", gen.num_vars);
  gen_cmd->add_option("-d,--depth", gen.depth);
  gen_cmd->add_option("-c,--count", gen.count);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("-o,--out", gen.out);

  VizArgs viz;
  CLI::App* viz_cmd = app.add_subcommand("viz", "Write the ROBDD of a formula as Graphviz DOT");
  viz.input.attach(viz_cmd);
  viz_cmd->add_option("--order", viz.order, "Variable order, comma separated");
  viz_cmd->add_option("-o,--out", viz.out);

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Time the engines on random formula batches");
  bench_cmd->add_option("suite", bench.suite)->required()->check(CLI::IsMember({"dpll", "robdd"}));
  bench_cmd->add_option("--counts", bench.counts)->delimiter(',');
  bench_cmd->add_option("-n,--num-vars", bench.num_vars);
  bench_cmd->add_option("-d,--depth", bench.depth);
  bench_cmd->add_option("-m,--mode", bench.mode)->check(CLI::IsMember(modes));
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--format", bench.format)->check(CLI::IsMember(formats));
  bench_cmd->add_flag("--parallel", bench.parallel, "Solve formulas of a batch concurrently");

  std::vector<const char*> argv{"edusat"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve, out, err);
    if (*smt_cmd) return cmd_smt(smt, out, err);
    if (*npc_cmd) return cmd_npc(npc, out, err);
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*viz_cmd) return cmd_viz(viz, out, err);
    return cmd_bench(bench, out, err);
  } catch (const ValidationFailure&) {
    return kValidation;
  } catch (const InvalidSolution& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace edusat::cli
