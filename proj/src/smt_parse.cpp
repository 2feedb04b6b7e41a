// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <charconv>
#include <sstream>

#include "edusat/error.hpp"
#include "edusat/smt.hpp"

namespace edusat {
namespace {

enum class Tok { Ident, Int, True, False, Not, And, Or, LParen, RParen, Plus, Minus, Star, Slash2, Cmp, End };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t pos;
  Cmp cmp = Cmp::Eq;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t len, Cmp c = Cmp::Eq) {
    out.push_back({k, text.substr(i, len), i, c});
    i += len;
  };
  while (i < text.size()) {
    const char c = text[i];
    const char next = i + 1 < text.size() ? text[i + 1] : '\0';
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      push(Tok::LParen, 1);
    } else if (c == ')') {
      push(Tok::RParen, 1);
    } else if (c == '+') {
      push(Tok::Plus, 1);
    } else if (c == '-') {
      push(Tok::Minus, 1);
    } else if (c == '*') {
      push(Tok::Star, 1);
    } else if (c == '/' && next == '/') {
      push(Tok::Slash2, 2);
    } else if (c == '<') {
      next == '=' ? push(Tok::Cmp, 2, Cmp::Le) : push(Tok::Cmp, 1, Cmp::Lt);
    } else if (c == '>') {
      next == '=' ? push(Tok::Cmp, 2, Cmp::Ge) : push(Tok::Cmp, 1, Cmp::Gt);
    } else if (c == '=') {
      push(Tok::Cmp, 1, Cmp::Eq);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      push(Tok::Int, j - i);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      std::string_view w = text.substr(i, j - i);
      Tok k = Tok::Ident;
      if (w == "and") k = Tok::And;
      else if (w == "or") k = Tok::Or;
      else if (w == "not") k = Tok::Not;
      else if (w == "true") k = Tok::True;
      else if (w == "false") k = Tok::False;
      push(k, j - i);
    } else {
      throw ParseError("unknown token '" + std::string(1, c) + "'", i);
    }
  }
  out.push_back({Tok::End, {}, text.size()});
  return out;
}

class SmtParser {
 public:
  explicit SmtParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  SmtFormula run() {
    Formula skeleton = or_expr();
    if (peek().kind != Tok::End) fail("unexpected '" + std::string(peek().text) + "'");
    return builder_.build(skeleton);
  }

 private:
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
    if (peek().kind == Tok::True || peek().kind == Tok::False) return Formula::constant(take().kind == Tok::True);
    // "(" opens either a parenthesized formula or a parenthesized term; try the
    // comparison reading first and fall back.
    const std::size_t start = pos_;
    try {
      IntTerm lhs = term();
      if (peek().kind != Tok::Cmp) {
        if (lhs.op() == IntTerm::Op::Var && pos_ == start + 1)
          throw ParseError("bare Boolean identifier '" + lhs.name().str() + "' is not an SMT atom",
                           tokens_[start].pos);
        fail("expected a comparison operator");
      }
      const Cmp op = take().cmp;
      IntTerm rhs = term();
      return builder_.atom(op, std::move(lhs), std::move(rhs));
    } catch (const ParseError&) {
      if (tokens_[start].kind != Tok::LParen) throw;
      pos_ = start;
    }
    take();
    Formula inner = or_expr();
    if (peek().kind != Tok::RParen) fail("expected ')'");
    take();
    return inner;
  }

  IntTerm term() {
    IntTerm t = factor();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool add = take().kind == Tok::Plus;
      IntTerm rhs = factor();
      t = add ? std::move(t) + std::move(rhs) : std::move(t) - std::move(rhs);
    }
    return t;
  }

  IntTerm factor() {
    IntTerm t = signed_unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash2) {
      const bool mul = take().kind == Tok::Star;
      IntTerm rhs = signed_unary();
      t = mul ? std::move(t) * std::move(rhs) : floor_div(std::move(t), std::move(rhs));
    }
    return t;
  }

  IntTerm signed_unary() {
    if (peek().kind == Tok::Minus) {
      take();
      if (peek().kind == Tok::Int) return integer(true);
      return IntTerm::constant(0) - signed_unary();
    }
    switch (peek().kind) {
      case Tok::Int:
        return integer(false);
      case Tok::Ident:
        return IntTerm::var(take().text);
      case Tok::LParen: {
        take();
        IntTerm inner = term();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        take();
        return inner;
      }
      default:
        fail("expected an integer term");
    }
  }

  IntTerm integer(bool negative) {
    const Token& t = peek();
    // Parse with the sign attached so INT64_MIN is representable.
    std::string digits = (negative ? "-" : "") + std::string(t.text);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc{}) throw ParseError("integer literal out of range", t.pos);
    take();
    return IntTerm::constant(v);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  SmtBuilder builder_;
};

void render_skeleton(std::ostream& os, const Formula& f, const SmtFormula& smt);

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

void render_child(std::ostream& os, const Formula& c, int parent, const SmtFormula& smt) {
  // Atoms are wrapped under `not` as well: "not x > 3" would not reparse.
  const bool wrap = (strength(c) <= parent && c.kind() != Kind::Not) || (parent == 3 && c.kind() == Kind::Var);
  if (wrap) os << '(';
  render_skeleton(os, c, smt);
  if (wrap) os << ')';
}

void render_skeleton(std::ostream& os, const Formula& f, const SmtFormula& smt) {
  switch (f.kind()) {
    case Kind::Const:
      os << (f.value() ? "true" : "false");
      break;
    case Kind::Var:
      os << render(smt.atoms().at(f.var().index));
      break;
    case Kind::Not:
      os << "not ";
      render_child(os, f.child(), 3, smt);
      break;
    default: {
      const char* sep = f.kind() == Kind::And ? " and " : " or ";
      bool first = true;
      for (const Formula& c : f.children()) {
        if (!first) os << sep;
        first = false;
        render_child(os, c, strength(f), smt);
      }
    }
  }
}

}  // namespace

SmtFormula parse_smt(std::string_view text) { return SmtParser(tokenize(text)).run(); }

std::string render(const SmtFormula& f) {
  std::ostringstream os;
  render_skeleton(os, f.skeleton(), f);
  return os.str();
}

}  // namespace edusat
