// SPDX-License-Identifier: Apache-2.0

#include "edusat/dimacs.hpp"

#include <algorithm>
#include <sstream>

#include "edusat/error.hpp"

namespace edusat {
namespace {

Formula make_clause(const std::vector<long long>& lits) {
  std::vector<Formula> parts;
  parts.reserve(lits.size());
  for (long long lit : lits) {
    auto index = static_cast<std::uint32_t>(lit < 0 ? -lit : lit);
    parts.push_back(Formula::literal({VarId::make(index), lit > 0}));
  }
  if (parts.empty()) return Formula::constant(false);
  if (parts.size() == 1) return parts.front();
  return Formula::disj(std::move(parts));
}

}  // namespace

Formula from_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  long long num_vars = -1;
  long long num_clauses = -1;
  std::vector<Formula> clauses;
  std::vector<long long> current;
  std::size_t line_no = 0;
  bool open_clause = false;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first[0] == 'c') continue;
    if (first == "%") break;  // SATLIB trailer
    if (first == "p") {
      std::string fmt;
      if (num_vars >= 0) throw DimacsError("duplicate header on line " + std::to_string(line_no));
      if (!(ls >> fmt >> num_vars >> num_clauses) || fmt != "cnf" || num_vars < 0 || num_clauses < 0)
        throw DimacsError("malformed header on line " + std::to_string(line_no));
      std::string extra;
      if (ls >> extra) throw DimacsError("malformed header on line " + std::to_string(line_no));
      continue;
    }
    if (num_vars < 0) throw DimacsError("clause before 'p cnf' header on line " + std::to_string(line_no));
    ls.clear();
    ls.seekg(0);
    std::string tok;
    while (ls >> tok) {
      long long lit = 0;
      std::size_t used = 0;
      try {
        lit = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size())
        throw DimacsError("bad literal '" + tok + "' on line " + std::to_string(line_no));
      if (lit == 0) {
        clauses.push_back(make_clause(current));
        current.clear();
        open_clause = false;
        continue;
      }
      if (lit > num_vars || -lit > num_vars)
        throw DimacsError("literal " + tok + " out of range on line " + std::to_string(line_no));
      current.push_back(lit);
      open_clause = true;
    }
  }
  if (num_vars < 0) throw DimacsError("missing 'p cnf' header");
  if (open_clause) throw DimacsError("last clause is not terminated by 0");
  if (static_cast<long long>(clauses.size()) != num_clauses)
    throw DimacsError("header declares " + std::to_string(num_clauses) + " clauses, found " +
                      std::to_string(clauses.size()));
  if (clauses.empty()) return Formula::constant(true);
  if (clauses.size() == 1) return clauses.front();
  return Formula::conj(std::move(clauses));
}

namespace {

// Literals of one clause; an empty result is the empty clause.
std::vector<Literal> clause_literals(const Formula& c) {
  if (c.is_const(false)) return {};
  if (c.is_literal()) return {c.as_literal()};
  if (c.kind() == Kind::Or) {
    std::vector<Literal> lits;
    for (const Formula& l : c.children()) {
      if (!l.is_literal()) throw DimacsError("not CNF: clause contains '" + render(l) + "'");
      lits.push_back(l.as_literal());
    }
    return lits;
  }
  throw DimacsError("not CNF: '" + render(c) + "' is not a clause");
}

}  // namespace

std::string to_dimacs(const Formula& f) {
  std::vector<std::vector<Literal>> clauses;
  if (f.is_const(true)) {
    // no clauses
  } else if (f.kind() == Kind::And) {
    for (const Formula& c : f.children()) {
      if (c.is_const(true)) continue;
      clauses.push_back(clause_literals(c));
    }
  } else {
    clauses.push_back(clause_literals(f));
  }

  const auto vars = free_vars(f);
  const std::uint32_t shift = (!vars.empty() && vars.front().index == 0) ? 1 : 0;
  const std::uint32_t max_var = vars.empty() ? 0 : vars.back().index + shift;

  std::ostringstream os;
  os << "p cnf " << max_var << ' ' << clauses.size() << '\n';
  for (const auto& clause : clauses) {
    for (const Literal& l : clause) {
      const auto n = static_cast<long long>(l.var.index + shift);
      os << (l.positive ? n : -n) << ' ';
    }
    os << "0\n";
  }
  return os.str();
}

}  // namespace edusat
