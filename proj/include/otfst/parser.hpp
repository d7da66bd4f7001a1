// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Reader for the calculus notation and for grammar files.
//
// Binding, loosest first: `o` `lc` `oo` (left-associative, equal
// precedence), `&`, `-`, `x` / `:`, prefix `~` `$`, postfix `*` `+` `^`.
// Single lowercase letters and digits are symbols; `x` and `o` are
// operators only in operator position. Capitalised identifiers are macro
// variables. `%` starts a line comment.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "otfst/expr.hpp"

namespace otfst {

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, int line, int col)
      : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int column() const { return col_; }

 private:
  int line_;
  int col_;
};

struct MacroClause {
  std::string name;
  std::vector<ExprPtr> params;  // patterns: variables or ground terms
  ExprPtr body;
};

struct RankingItem {
  std::string name;
  std::string method;  // empty when not given
  std::optional<unsigned> precision;
};

/// Parsed contents of a grammar file.
struct GrammarSource {
  std::vector<MacroClause> macros;
  ExprPtr gen;
  std::vector<RankingItem> ranking;
  ExprPtr erasable;
};

namespace detail {

enum class Tok {
  kLBrack, kRBrack, kLBrace, kRBrace, kLParen, kRParen, kComma,
  kStar, kPlus, kCaret, kMinus, kTilde, kDollar, kAmp, kQuestion,
  kColon, kDColon, kDot, kEquals, kSemi, kGg,
  kIdent, kInt, kQuoted, kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto adv = [&](std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv();
      continue;
    }
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') adv();
      continue;
    }
    const int l = line, cl = col;
    auto single = [&](Tok t) {
      out.push_back({t, std::string(1, c), l, cl});
      adv();
    };
    switch (c) {
      case '[': single(Tok::kLBrack); continue;
      case ']': single(Tok::kRBrack); continue;
      case '{': single(Tok::kLBrace); continue;
      case '}': single(Tok::kRBrace); continue;
      case '(': single(Tok::kLParen); continue;
      case ')': single(Tok::kRParen); continue;
      case ',': single(Tok::kComma); continue;
      case '*': single(Tok::kStar); continue;
      case '+': single(Tok::kPlus); continue;
      case '^': single(Tok::kCaret); continue;
      case '-': single(Tok::kMinus); continue;
      case '~': single(Tok::kTilde); continue;
      case '$': single(Tok::kDollar); continue;
      case '&': single(Tok::kAmp); continue;
      case '?': single(Tok::kQuestion); continue;
      case '.': single(Tok::kDot); continue;
      case '=': single(Tok::kEquals); continue;
      case ';': single(Tok::kSemi); continue;
      default: break;
    }
    if (c == ':') {
      if (i + 1 < src.size() && src[i + 1] == ':') {
        out.push_back({Tok::kDColon, "::", l, cl});
        adv(2);
      } else {
        single(Tok::kColon);
      }
      continue;
    }
    if (c == '>' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::kGg, ">>", l, cl});
      adv(2);
      continue;
    }
    if (c == '@') {
      out.push_back({Tok::kQuoted, "@", l, cl});
      adv();
      continue;
    }
    if (c == '\'') {
      std::string text;
      adv();
      while (true) {
        if (i >= src.size()) throw SyntaxError("unterminated quoted atom", l, cl);
        char d = src[i];
        if (d == '\'') {
          adv();
          break;
        }
        if (d == '\\' && i + 1 < src.size()) {
          adv();
          d = src[i];
        }
        text += d;
        adv();
      }
      if (text.empty()) throw SyntaxError("empty quoted atom", l, cl);
      out.push_back({Tok::kQuoted, std::move(text), l, cl});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string text;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        text += src[i];
        adv();
      }
      out.push_back({Tok::kInt, std::move(text), l, cl});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string text;
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        text += src[i];
        adv();
      }
      out.push_back({Tok::kIdent, std::move(text), l, cl});
      continue;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", l, cl);
  }
  out.push_back({Tok::kEnd, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  ExprPtr expression() { return compose_level(); }

  bool at_end() const { return peek().kind == Tok::kEnd; }

  void expect_end() {
    if (!at_end()) fail("unexpected '" + peek().text + "'");
  }

  GrammarSource grammar() {
    GrammarSource g;
    while (!at_end()) {
      const Token& t = peek();
      if (t.kind != Tok::kIdent) fail("expected a statement");
      if (t.text == "macro") {
        g.macros.push_back(macro_clause());
      } else if (t.text == "gen" && peek(1).kind == Tok::kEquals) {
        next();
        next();
        g.gen = expression();
        expect(Tok::kSemi, "';'");
      } else if (t.text == "erasable" && peek(1).kind == Tok::kEquals) {
        next();
        next();
        g.erasable = expression();
        expect(Tok::kSemi, "';'");
      } else if (t.text == "ranking" && peek(1).kind == Tok::kEquals) {
        next();
        next();
        g.ranking = ranking();
        expect(Tok::kSemi, "';'");
      } else {
        fail("expected 'macro(...)', 'gen =', 'ranking =' or 'erasable ='");
      }
    }
    return g;
  }

  std::vector<RankingItem> ranking() {
    std::vector<RankingItem> items;
    do {
      RankingItem item;
      item.name = constraint_name();
      if (accept(Tok::kColon)) {
        const Token& m = expect(Tok::kIdent, "a method name");
        item.method = m.text;
        if (accept(Tok::kColon)) {
          const Token& p = expect(Tok::kInt, "a precision");
          item.precision = static_cast<unsigned>(std::stoul(p.text));
        }
      }
      items.push_back(std::move(item));
    } while (accept(Tok::kGg));
    return items;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k)
      fail(std::string("expected ") + what + ", found '" + peek().text + "'");
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, peek().line, peek().col);
  }
  bool at_ident(const char* word) const {
    return peek().kind == Tok::kIdent && peek().text == word;
  }

  MacroClause macro_clause() {
    next();  // macro
    expect(Tok::kLParen, "'('");
    MacroClause clause;
    clause.name = expect(Tok::kIdent, "a macro name").text;
    if (accept(Tok::kLParen)) {
      do clause.params.push_back(expression());
      while (accept(Tok::kComma));
      expect(Tok::kRParen, "')'");
    }
    expect(Tok::kComma, "','");
    clause.body = expression();
    expect(Tok::kRParen, "')'");
    expect(Tok::kDot, "'.'");
    return clause;
  }

  std::string constraint_name() {
    if (peek().kind == Tok::kIdent || peek().kind == Tok::kQuoted) return next().text;
    fail("expected a constraint name");
  }

  ExprPtr compose_level() {
    ExprPtr left = intersect_level();
    while (true) {
      if (at_ident("o")) {
        next();
        left = ex::binary(Op::kCompose, left, intersect_level());
      } else if (at_ident("lc")) {
        next();
        left = ex::binary(Op::kLenient, left, intersect_level());
      } else if (at_ident("oo")) {
        next();
        int prec = -1;
        if (peek().kind == Tok::kInt && peek(1).kind == Tok::kDColon) {
          prec = std::stoi(next().text);
          next();
        }
        left = ex::optimality(left, constraint_name(), prec);
      } else {
        return left;
      }
    }
  }

  ExprPtr intersect_level() {
    ExprPtr left = diff_level();
    while (accept(Tok::kAmp)) left = ex::binary(Op::kIntersect, left, diff_level());
    return left;
  }

  ExprPtr diff_level() {
    ExprPtr left = cross_level();
    while (accept(Tok::kMinus)) left = ex::binary(Op::kDiff, left, cross_level());
    return left;
  }

  ExprPtr cross_level() {
    ExprPtr left = prefix_level();
    while (at_ident("x") || peek().kind == Tok::kColon) {
      next();
      left = ex::binary(Op::kCross, left, prefix_level());
    }
    return left;
  }

  ExprPtr prefix_level() {
    if (accept(Tok::kTilde)) return ex::unary(Op::kComplement, prefix_level());
    if (accept(Tok::kDollar)) return ex::unary(Op::kContainment, prefix_level());
    return postfix_level();
  }

  ExprPtr postfix_level() {
    ExprPtr e = primary();
    while (true) {
      if (accept(Tok::kStar))
        e = ex::unary(Op::kStar, e);
      else if (accept(Tok::kPlus))
        e = ex::unary(Op::kPlus, e);
      else if (accept(Tok::kCaret))
        e = ex::unary(Op::kOption, e);
      else
        return e;
    }
  }

  std::vector<ExprPtr> list(Tok close, const char* what) {
    std::vector<ExprPtr> items;
    do items.push_back(expression());
    while (accept(Tok::kComma));
    expect(close, what);
    return items;
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kLBrack:
        next();
        if (accept(Tok::kRBrack)) return ex::empty_string();
        return ex::make(Op::kSeq, list(Tok::kRBrack, "']'"));
      case Tok::kLBrace:
        next();
        if (accept(Tok::kRBrace)) return ex::empty_lang();
        return ex::make(Op::kUnion, list(Tok::kRBrace, "'}'"));
      case Tok::kLParen: {
        next();
        ExprPtr e = expression();
        expect(Tok::kRParen, "')'");
        return e;
      }
      case Tok::kQuestion:
        next();
        return ex::any();
      case Tok::kQuoted:
        return ex::sym(next().text);
      case Tok::kInt:
        return ex::sym(next().text);
      case Tok::kIdent: {
        std::string name = next().text;
        if (accept(Tok::kLParen)) {
          std::vector<ExprPtr> args = list(Tok::kRParen, "')'");
          static const std::pair<const char*, Op> kUnaryOps[] = {
              {"domain", Op::kDomain},
              {"range", Op::kRange},
              {"identity", Op::kIdentity},
              {"inverse", Op::kInverse}};
          for (auto [word, op] : kUnaryOps)
            if (name == word) {
              if (args.size() != 1) fail(name + " takes one argument");
              return ex::unary(op, args[0]);
            }
          return ex::call(std::move(name), std::move(args));
        }
        if (name.size() == 1 && std::islower(static_cast<unsigned char>(name[0])))
          return ex::sym(std::move(name));
        return ex::ident(std::move(name));
      }
      default:
        fail("expected an expression, found '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses one expression; the whole text must be consumed.
inline ExprPtr parse_expr(std::string_view text) {
  detail::Parser p(text);
  ExprPtr e = p.expression();
  p.expect_end();
  return e;
}

/// Parses a grammar file: `macro(Head, Body).` clauses plus optional
/// `gen = E;`, `ranking = c1[:method[:prec]] >> ...;` and `erasable = E;`.
inline GrammarSource parse_grammar(std::string_view text) {
  detail::Parser p(text);
  return p.grammar();
}

/// Parses a stand-alone ranking such as `parse >> fill_ons:match:1`.
inline std::vector<RankingItem> parse_ranking(std::string_view text) {
  detail::Parser p(text);
  auto r = p.ranking();
  p.expect_end();
  return r;
}

}  // namespace otfst
