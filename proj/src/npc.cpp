// SPDX-License-Identifier: Apache-2.0

#include "edusat/npc.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "edusat/error.hpp"

namespace edusat {

namespace {

IntTerm V(const std::string& name) { return IntTerm::var(name); }
IntTerm C(std::int64_t value) { return IntTerm::constant(value); }

std::string indexed(char prefix, std::size_t i) { return prefix + std::to_string(i); }

std::string cell_name(std::size_t r, std::size_t c) {
  return "r" + std::to_string(r + 1) + "c" + std::to_string(c + 1);
}

// Collects constraints and ranges; variables left unmentioned get `v >= lo`.
class EncodingBuilder {
 public:
  void var(const std::string& name, std::int64_t lo, std::int64_t hi) {
    bounds_.set(name, lo, hi);
    order_.push_back(name);
  }

  void require(const Formula& f) { parts_.push_back(f); }
  Formula atom(Cmp op, IntTerm lhs, IntTerm rhs) { return b_.atom(op, std::move(lhs), std::move(rhs)); }

  Encoding finish() && {
    Encoding probe{b_.build(conjoin(parts_)), {}};
    for (const std::string& name : order_) {
      const bool mentioned = std::ranges::any_of(probe.formula.int_vars(), [&](Symbol s) { return s.str() == name; });
      if (!mentioned) parts_.push_back(b_.atom(Cmp::Ge, V(name), C(bounds_.get(name)->lo)));
    }
    return Encoding{b_.build(conjoin(parts_)), std::move(bounds_)};
  }

 private:
  SmtBuilder b_;
  std::vector<Formula> parts_;
  std::vector<std::string> order_;
  DomainBounds bounds_;
};

// Left-leaning chain t0 + t1 + ...; the empty sum is 0.
IntTerm sum(const std::vector<IntTerm>& terms) {
  if (terms.empty()) return C(0);
  IntTerm acc = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) acc = acc + terms[i];
  return acc;
}

std::int64_t lookup(const IntModel& model, const std::string& name, std::int64_t lo, std::int64_t hi) {
  const auto it = model.find(name);
  if (it == model.end()) throw InstanceError("model has no value for '" + name + "'");
  if (it->second < lo || it->second > hi)
    throw InstanceError("value " + std::to_string(it->second) + " of '" + name + "' is out of range");
  return it->second;
}

bool ascending_distinct_below(const auto& ids, std::size_t limit) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] >= limit) return false;
    if (i > 0 && ids[i - 1] >= ids[i]) return false;
  }
  return true;
}

// Peers of each cell that come later in row-major order.
template <typename F>
void for_each_peer_pair(F&& visit) {
  for (std::size_t a = 0; a < 81; ++a) {
    for (std::size_t b = a + 1; b < 81; ++b) {
      const std::size_t ra = a / 9, ca = a % 9, rb = b / 9, cb = b % 9;
      const bool same_box = ra / 3 == rb / 3 && ca / 3 == cb / 3;
      if (ra == rb || ca == cb || same_box) visit(ra, ca, rb, cb);
    }
  }
}

bool sudoku_consistent(const SudokuGrid& g, bool require_full) {
  bool ok = true;
  for_each_peer_pair([&](std::size_t ra, std::size_t ca, std::size_t rb, std::size_t cb) {
    if (g[ra][ca] != 0 && g[ra][ca] == g[rb][cb]) ok = false;
  });
  for (const auto& row : g)
    for (std::uint8_t v : row)
      if (v > 9 || (require_full && v == 0)) ok = false;
  return ok;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// --- instance files ----------------------------------------------------------

std::int64_t read_int(std::istream& in, const char* what) {
  std::int64_t v = 0;
  if (!(in >> v)) throw InstanceError(std::string("expected ") + what);
  return v;
}

std::uint32_t read_count(std::istream& in, const char* what) {
  const std::int64_t v = read_int(in, what);
  if (v < 0 || v > 100000) throw InstanceError(std::string(what) + " out of range");
  return static_cast<std::uint32_t>(v);
}

void expect_end(std::istream& in) {
  std::string rest;
  if (in >> rest) throw InstanceError("unexpected trailing text '" + rest + "'");
}

std::pair<Graph, std::uint32_t> read_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  const std::uint32_t vertices = read_count(in, "vertex count");
  const std::uint32_t edges = read_count(in, "edge count");
  const std::uint32_t k = read_count(in, "k");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> list;
  for (std::uint32_t e = 0; e < edges; ++e) {
    const std::uint32_t u = read_count(in, "edge endpoint");
    const std::uint32_t v = read_count(in, "edge endpoint");
    list.emplace_back(u, v);
  }
  expect_end(in);
  return {Graph::make(vertices, std::move(list)), k};
}

}  // namespace

std::string_view to_string(Problem p) {
  switch (p) {
    case Problem::NQueens: return "nqueens";
    case Problem::Coloring: return "coloring";
    case Problem::SubsetSum: return "subsetsum";
    case Problem::VertexCover: return "vertexcover";
    case Problem::Sudoku: return "sudoku";
  }
  return "?";
}

std::optional<Problem> problem_from_string(std::string_view name) {
  for (Problem p : {Problem::NQueens, Problem::Coloring, Problem::SubsetSum, Problem::VertexCover, Problem::Sudoku})
    if (to_string(p) == name) return p;
  return std::nullopt;
}

Graph Graph::make(std::uint32_t vertices, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  for (auto& [u, v] : edges) {
    if (u >= vertices || v >= vertices)
      throw InstanceError("edge " + std::to_string(u) + "-" + std::to_string(v) + " names a missing vertex");
    if (u == v) throw InstanceError("self-loop on vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::ranges::sort(edges);
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph{vertices, std::move(edges)};
}

Problem problem_of(const Instance& inst) { return static_cast<Problem>(inst.index()); }

// --- encoders ----------------------------------------------------------------

Encoding encode_nqueens(const NQueensInstance& inst) {
  if (inst.n == 0) throw InstanceError("n-queens needs n >= 1");
  EncodingBuilder e;
  const std::int64_t n = inst.n;
  for (std::int64_t i = 0; i < n; ++i) e.var(indexed('q', i), 0, n - 1);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i + 1; j < n; ++j) {
      const IntTerm qi = V(indexed('q', i)), qj = V(indexed('q', j));
      e.require(Formula::negate(e.atom(Cmp::Eq, qi, qj)));
      e.require(Formula::negate(e.atom(Cmp::Eq, qi - qj, C(i - j))));
      e.require(Formula::negate(e.atom(Cmp::Eq, qi - qj, C(j - i))));
    }
  }
  return std::move(e).finish();
}

Encoding encode_coloring(const ColoringInstance& inst) {
  if (inst.colors == 0) throw InstanceError("coloring needs k >= 1");
  EncodingBuilder e;
  for (std::uint32_t v = 0; v < inst.graph.vertices; ++v) e.var(indexed('c', v), 0, inst.colors - 1);
  for (auto [u, v] : inst.graph.edges)
    e.require(Formula::negate(e.atom(Cmp::Eq, V(indexed('c', u)), V(indexed('c', v)))));
  return std::move(e).finish();
}

Encoding encode_subset_sum(const SubsetSumInstance& inst) {
  EncodingBuilder e;
  std::vector<IntTerm> terms;
  for (std::size_t i = 0; i < inst.items.size(); ++i) {
    e.var(indexed('s', i), 0, 1);
    terms.push_back(V(indexed('s', i)) * C(inst.items[i]));
  }
  e.require(e.atom(Cmp::Eq, sum(terms), C(inst.target)));
  return std::move(e).finish();
}

Encoding encode_vertex_cover(const VertexCoverInstance& inst) {
  EncodingBuilder e;
  std::vector<IntTerm> selectors;
  for (std::uint32_t v = 0; v < inst.graph.vertices; ++v) {
    e.var(indexed('s', v), 0, 1);
    selectors.push_back(V(indexed('s', v)));
  }
  for (auto [u, v] : inst.graph.edges)
    e.require(Formula::disj({e.atom(Cmp::Eq, V(indexed('s', u)), C(1)), e.atom(Cmp::Eq, V(indexed('s', v)), C(1))}));
  e.require(e.atom(Cmp::Le, sum(selectors), C(inst.budget)));
  return std::move(e).finish();
}

Encoding encode_sudoku(const SudokuInstance& inst) {
  if (!sudoku_consistent(inst.grid, false)) throw InstanceError("Sudoku givens already conflict");
  EncodingBuilder e;
  auto term = [&](std::size_t r, std::size_t c) {
    return inst.grid[r][c] == 0 ? V(cell_name(r, c)) : C(inst.grid[r][c]);
  };
  for (std::size_t r = 0; r < 9; ++r)
    for (std::size_t c = 0; c < 9; ++c)
      if (inst.grid[r][c] == 0) e.var(cell_name(r, c), 1, 9);
  for_each_peer_pair([&](std::size_t ra, std::size_t ca, std::size_t rb, std::size_t cb) {
    if (inst.grid[ra][ca] != 0 && inst.grid[rb][cb] != 0) return;
    IntTerm lhs = term(ra, ca), rhs = term(rb, cb);
    if (inst.grid[ra][ca] != 0) std::swap(lhs, rhs);
    e.require(Formula::negate(e.atom(Cmp::Eq, lhs, rhs)));
  });
  return std::move(e).finish();
}

Encoding encode(const Instance& inst) {
  return std::visit(Overloaded{
                        [](const NQueensInstance& i) { return encode_nqueens(i); },
                        [](const ColoringInstance& i) { return encode_coloring(i); },
                        [](const SubsetSumInstance& i) { return encode_subset_sum(i); },
                        [](const VertexCoverInstance& i) { return encode_vertex_cover(i); },
                        [](const SudokuInstance& i) { return encode_sudoku(i); },
                    },
                    inst);
}

// --- decode / validate -------------------------------------------------------

DomainSolution decode(const Instance& inst, const IntModel& model) {
  return std::visit(
      Overloaded{
          [&](const NQueensInstance& i) -> DomainSolution {
            QueenPlacement p;
            for (std::uint32_t c = 0; c < i.n; ++c)
              p.rows.push_back(static_cast<std::uint32_t>(lookup(model, indexed('q', c), 0, i.n - 1)));
            return p;
          },
          [&](const ColoringInstance& i) -> DomainSolution {
            VertexColoring col;
            for (std::uint32_t v = 0; v < i.graph.vertices; ++v)
              col.colors.push_back(static_cast<std::uint32_t>(lookup(model, indexed('c', v), 0, i.colors - 1)));
            return col;
          },
          [&](const SubsetSumInstance& i) -> DomainSolution {
            SubsetSelection s;
            for (std::size_t k = 0; k < i.items.size(); ++k)
              if (lookup(model, indexed('s', k), 0, 1) == 1) s.chosen.push_back(k);
            return s;
          },
          [&](const VertexCoverInstance& i) -> DomainSolution {
            VertexCover vc;
            for (std::uint32_t v = 0; v < i.graph.vertices; ++v)
              if (lookup(model, indexed('s', v), 0, 1) == 1) vc.cover.push_back(v);
            return vc;
          },
          [&](const SudokuInstance& i) -> DomainSolution {
            SudokuSolution s{i.grid};
            for (std::size_t r = 0; r < 9; ++r)
              for (std::size_t c = 0; c < 9; ++c)
                if (i.grid[r][c] == 0) s.grid[r][c] = static_cast<std::uint8_t>(lookup(model, cell_name(r, c), 1, 9));
            return s;
          },
      },
      inst);
}

bool validate(const Instance& inst, const DomainSolution& sol) {
  if (inst.index() != sol.index()) return false;
  switch (problem_of(inst)) {
    case Problem::NQueens: {
      const auto n = std::get<NQueensInstance>(inst).n;
      const auto& rows = std::get<QueenPlacement>(sol).rows;
      if (rows.size() != n) return false;
      for (std::size_t i = 0; i < n; ++i) {
        if (rows[i] >= n) return false;
        for (std::size_t j = i + 1; j < n; ++j) {
          const auto dr = static_cast<std::int64_t>(rows[i]) - static_cast<std::int64_t>(rows[j]);
          if (dr == 0 || dr == static_cast<std::int64_t>(j - i) || -dr == static_cast<std::int64_t>(j - i))
            return false;
        }
      }
      return true;
    }
    case Problem::Coloring: {
      const auto& i = std::get<ColoringInstance>(inst);
      const auto& colors = std::get<VertexColoring>(sol).colors;
      if (colors.size() != i.graph.vertices) return false;
      if (std::ranges::any_of(colors, [&](std::uint32_t c) { return c >= i.colors; })) return false;
      return std::ranges::none_of(i.graph.edges, [&](auto e) { return colors[e.first] == colors[e.second]; });
    }
    case Problem::SubsetSum: {
      const auto& i = std::get<SubsetSumInstance>(inst);
      const auto& chosen = std::get<SubsetSelection>(sol).chosen;
      if (!ascending_distinct_below(chosen, i.items.size())) return false;
      std::int64_t total = 0;
      for (std::size_t k : chosen)
        if (__builtin_add_overflow(total, i.items[k], &total)) return false;
      return total == i.target;
    }
    case Problem::VertexCover: {
      const auto& i = std::get<VertexCoverInstance>(inst);
      const auto& cover = std::get<VertexCover>(sol).cover;
      if (!ascending_distinct_below(cover, i.graph.vertices) || cover.size() > i.budget) return false;
      auto in_cover = [&](std::uint32_t v) { return std::ranges::binary_search(cover, v); };
      return std::ranges::all_of(i.graph.edges, [&](auto e) { return in_cover(e.first) || in_cover(e.second); });
    }
    case Problem::Sudoku: {
      const auto& given = std::get<SudokuInstance>(inst).grid;
      const auto& grid = std::get<SudokuSolution>(sol).grid;
      for (std::size_t r = 0; r < 9; ++r)
        for (std::size_t c = 0; c < 9; ++c)
          if (given[r][c] != 0 && given[r][c] != grid[r][c]) return false;
      return sudoku_consistent(grid, true);
    }
  }
  return false;
}

std::string render(const Instance& inst, const DomainSolution& sol) {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const QueenPlacement& p) {
                   for (std::size_t r = 0; r < p.rows.size(); ++r) {
                     for (std::size_t c = 0; c < p.rows.size(); ++c) os << (c ? " " : "") << (p.rows[c] == r ? 'Q' : '.');
                     os << '\n';
                   }
                 },
                 [&](const VertexColoring& col) {
                   for (std::size_t v = 0; v < col.colors.size(); ++v) os << (v ? " " : "") << v << ':' << col.colors[v];
                   os << '\n';
                 },
                 [&](const SubsetSelection& s) {
                   const auto& items = std::get<SubsetSumInstance>(inst).items;
                   os << '{';
                   for (std::size_t k = 0; k < s.chosen.size(); ++k) os << (k ? ", " : "") << items[s.chosen[k]];
                   os << "}\n";
                 },
                 [&](const VertexCover& vc) {
                   os << '{';
                   for (std::size_t k = 0; k < vc.cover.size(); ++k) os << (k ? ", " : "") << vc.cover[k];
                   os << "}\n";
                 },
                 [&](const SudokuSolution& s) {
                   for (const auto& row : s.grid) {
                     for (std::uint8_t v : row) os << static_cast<char>(v == 0 ? '.' : '0' + v);
                     os << '\n';
                   }
                 },
             },
             sol);
  return os.str();
}

Instance parse_instance(Problem p, std::string_view text) {
  switch (p) {
    case Problem::NQueens: {
      std::istringstream in{std::string(text)};
      const std::uint32_t n = read_count(in, "board size");
      expect_end(in);
      if (n == 0) throw InstanceError("n-queens needs n >= 1");
      return NQueensInstance{n};
    }
    case Problem::Coloring: {
      auto [g, k] = read_graph(text);
      if (k == 0) throw InstanceError("coloring needs k >= 1");
      return ColoringInstance{std::move(g), k};
    }
    case Problem::VertexCover: {
      auto [g, k] = read_graph(text);
      return VertexCoverInstance{std::move(g), k};
    }
    case Problem::SubsetSum: {
      std::istringstream in{std::string(text)};
      std::string line;
      SubsetSumInstance inst;
      bool have_target = false;
      while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (have_target) throw InstanceError("text after the target line");
        if (word == "target") {
          inst.target = read_int(ls, "target value");
          expect_end(ls);
          have_target = true;
          continue;
        }
        std::istringstream items(line);
        for (std::string tok; items >> tok;) {
          std::istringstream ts(tok);
          inst.items.push_back(read_int(ts, "integer item"));
          expect_end(ts);
        }
      }
      if (!have_target) throw InstanceError("missing 'target <t>' line");
      return inst;
    }
    case Problem::Sudoku: {
      std::istringstream in{std::string(text)};
      SudokuInstance inst;
      std::size_t r = 0;
      for (std::string line; std::getline(in, line);) {
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
        if (line.empty()) continue;
        if (r == 9) throw InstanceError("more than 9 Sudoku rows");
        if (line.size() != 9) throw InstanceError("Sudoku row " + std::to_string(r + 1) + " needs 9 cells");
        for (std::size_t c = 0; c < 9; ++c) {
          const char ch = line[c];
          if (ch == '.' || ch == '0')
            inst.grid[r][c] = 0;
          else if (ch >= '1' && ch <= '9')
            inst.grid[r][c] = static_cast<std::uint8_t>(ch - '0');
          else
            throw InstanceError(std::string("bad Sudoku cell '") + ch + "'");
        }
        ++r;
      }
      if (r != 9) throw InstanceError("Sudoku needs 9 rows");
      if (!sudoku_consistent(inst.grid, false)) throw InstanceError("Sudoku givens already conflict");
      return inst;
    }
  }
  throw InstanceError("unknown problem");
}

NpcOutcome solve_instance(const Instance& inst, const SmtSolveOptions& opts) {
  const Encoding enc = encode(inst);
  NpcOutcome out;
  out.smt = solve_smt(enc.formula, enc.bounds, opts);
  for (const IntModel& m : out.smt.models) {
    DomainSolution sol = decode(inst, m);
    if (!validate(inst, sol))
      throw InvalidSolution(std::string(to_string(problem_of(inst))) + " solution failed validation:\n" +
                            render(inst, sol));
    out.solutions.push_back(std::move(sol));
  }
  return out;
}

}  // namespace edusat
