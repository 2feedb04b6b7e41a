// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include "edusat/error.hpp"
#include "edusat/formula.hpp"

namespace edusat {
namespace {

constexpr std::uint32_t kMaxConventionalIndex = 1u << 20;

enum class Tok { Ident, True, False, Not, And, Or, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      out.push_back({Tok::LParen, text.substr(i, 1), i});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, text.substr(i, 1), i});
      ++i;
    } else if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string_view word = text.substr(i, j - i);
      Tok kind = Tok::Ident;
      if (word == "and") kind = Tok::And;
      else if (word == "or") kind = Tok::Or;
      else if (word == "not") kind = Tok::Not;
      else if (word == "true") kind = Tok::True;
      else if (word == "false") kind = Tok::False;
      out.push_back({kind, word, i});
      i = j;
    } else {
      throw ParseError("unknown token '" + std::string(1, c) + "'", i);
    }
  }
  out.push_back({Tok::End, {}, text.size()});
  return out;
}

std::optional<std::uint32_t> conventional_index(std::string_view name) {
  if (name.size() < 2 || name[0] != 'x') return std::nullopt;
  std::string_view digits = name.substr(1);
  if (!std::ranges::all_of(digits, [](char c) { return c >= '0' && c <= '9'; })) return std::nullopt;
  if (digits.size() > 1 && digits[0] == '0') return std::nullopt;
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || value >= kMaxConventionalIndex) return std::nullopt;
  return value;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) { assign_indices(); }

  Formula run() {
    Formula f = or_expr();
    if (peek().kind != Tok::End) fail("unexpected '" + std::string(peek().text) + "'");
    return f;
  }

 private:
  void assign_indices() {
    std::vector<std::string_view> others;
    std::int64_t max_conventional = -1;
    for (const Token& t : tokens_) {
      if (t.kind != Tok::Ident) continue;
      if (auto k = conventional_index(t.text)) {
        max_conventional = std::max<std::int64_t>(max_conventional, *k);
        vars_.try_emplace(t.text, *k, Symbol(t.text));
      } else {
        others.push_back(t.text);
      }
    }
    std::ranges::sort(others, [](std::string_view a, std::string_view b) { return natural_less(a, b); });
    others.erase(std::unique(others.begin(), others.end()), others.end());
    auto next = static_cast<std::uint32_t>(max_conventional + 1);
    for (std::string_view name : others) vars_.try_emplace(name, next++, Symbol(name));
  }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    if (peek().kind == Tok::End) throw ParseError("unexpected end of input", peek().pos);
    throw ParseError(msg, peek().pos);
  }

  Formula or_expr() {
    std::vector<Formula> parts{and_expr()};
    while (peek().kind == Tok::Or) {
      take();
      parts.push_back(and_expr());
    }
    return parts.size() == 1 ? parts.front() : Formula::disj(std::move(parts));
  }

  Formula and_expr() {
    std::vector<Formula> parts{unary()};
    while (peek().kind == Tok::And) {
      take();
      parts.push_back(unary());
    }
    return parts.size() == 1 ? parts.front() : Formula::conj(std::move(parts));
  }

  Formula unary() {
    if (peek().kind == Tok::Not) {
      take();
      return Formula::negate(unary());
    }
    return atom();
  }

  Formula atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
        take();
        return Formula::var(vars_.at(t.text));
      case Tok::True:
        take();
        return Formula::constant(true);
      case Tok::False:
        take();
        return Formula::constant(false);
      case Tok::LParen: {
        take();
        Formula inner = or_expr();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        take();
        return inner;
      }
      default:
        fail("expected a variable, constant or '('");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::map<std::string_view, VarId> vars_;
};

// Binding strength of the operator at the top of `f`; leaves bind tightest.
int strength(const Formula& f) {
  switch (f.kind()) {
    case Kind::Or:
      return 1;
    case Kind::And:
      return 2;
    case Kind::Not:
      return 3;
    default:
      return 4;
  }
}

void render_into(std::ostream& os, const Formula& f) {
  // A child is parenthesized when it binds no tighter than its parent, which
  // also keeps nested n-ary nodes of the same kind from merging on reparse.
  auto child = [&](const Formula& c, int parent) {
    const bool wrap = strength(c) <= parent && c.kind() != Kind::Not;
    if (wrap) os << '(';
    render_into(os, c);
    if (wrap) os << ')';
  };
  switch (f.kind()) {
    case Kind::Const:
      os << (f.value() ? "true" : "false");
      break;
    case Kind::Var:
      os << f.var().name;
      break;
    case Kind::Not:
      os << "not ";
      child(f.child(), 3);
      break;
    case Kind::And:
    case Kind::Or: {
      const char* sep = f.kind() == Kind::And ? " and " : " or ";
      bool first = true;
      for (const Formula& c : f.children()) {
        if (!first) os << sep;
        first = false;
        child(c, strength(f));
      }
      break;
    }
  }
}

}  // namespace

Formula parse(std::string_view text) { return Parser(tokenize(text)).run(); }

std::string render(const Formula& f) {
  std::ostringstream os;
  render_into(os, f);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Formula& f) {
  render_into(os, f);
  return os;
}

}  // namespace edusat
