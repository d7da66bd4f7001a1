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

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "otfst/alphabet.hpp"

namespace otfst {

enum class Op {
  kEmptyString,  // []
  kEmptyLang,    // {}
  kSymbol,       // a, 'O['
  kAny,          // ?
  kIdent,        // macro reference, or a variable when capitalised
  kCall,         // name(args): macro call or builtin
  kSeq,          // [E1,...,En]
  kUnion,        // {E1,...,En}
  kStar,
  kPlus,
  kOption,  // E^
  kDiff,
  kComplement,   // ~E
  kContainment,  // $E
  kIntersect,
  kCross,        // E1 x E2
  kCompose,      // A o B
  kLenient,      // A lc B
  kOptimality,   // Cands oo [N ::] Constraint
  kDomain,
  kRange,
  kIdentity,
  kInverse,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable regular-expression AST node.
///
/// For kOptimality, `name` is the constraint name and `args` holds the
/// candidate expression; after macro expansion a second argument holds the
/// violation-marking transducer. `precision` is -1 when not annotated.
struct Expr {
  Op op;
  std::string name;
  std::vector<ExprPtr> args;
  int precision = -1;
};

namespace ex {

inline ExprPtr make(Op op, std::vector<ExprPtr> args = {}, std::string name = {}, int precision = -1) {
  return std::make_shared<const Expr>(Expr{op, std::move(name), std::move(args), precision});
}
inline ExprPtr empty_string() { return make(Op::kEmptyString); }
inline ExprPtr empty_lang() { return make(Op::kEmptyLang); }
inline ExprPtr sym(std::string name) { return make(Op::kSymbol, {}, std::move(name)); }
inline ExprPtr any() { return make(Op::kAny); }
inline ExprPtr ident(std::string name) { return make(Op::kIdent, {}, std::move(name)); }
inline ExprPtr call(std::string name, std::vector<ExprPtr> args) {
  return make(Op::kCall, std::move(args), std::move(name));
}
inline ExprPtr seq(std::vector<ExprPtr> items) {
  if (items.empty()) return empty_string();
  return make(Op::kSeq, std::move(items));
}
inline ExprPtr alt(std::vector<ExprPtr> items) {
  if (items.empty()) return empty_lang();
  return make(Op::kUnion, std::move(items));
}
inline ExprPtr unary(Op op, ExprPtr a) { return make(op, {std::move(a)}); }
inline ExprPtr binary(Op op, ExprPtr a, ExprPtr b) { return make(op, {std::move(a), std::move(b)}); }
inline ExprPtr optimality(ExprPtr cands, std::string constraint, int precision = -1) {
  return make(Op::kOptimality, {std::move(cands)}, std::move(constraint), precision);
}

}  // namespace ex

inline bool is_variable_name(const std::string& n) {
  return !n.empty() && std::isupper(static_cast<unsigned char>(n[0]));
}

/// Structural equality.
inline bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op || a->name != b->name || a->precision != b->precision ||
      a->args.size() != b->args.size())
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

namespace detail {

// Binding strength used by the printer; the parser mirrors it.
inline int level(Op op) {
  switch (op) {
    case Op::kCompose:
    case Op::kLenient:
    case Op::kOptimality:
      return 1;
    case Op::kIntersect:
      return 2;
    case Op::kDiff:
      return 3;
    case Op::kCross:
      return 4;
    case Op::kComplement:
    case Op::kContainment:
      return 5;
    case Op::kStar:
    case Op::kPlus:
    case Op::kOption:
      return 6;
    default:
      return 7;
  }
}

inline bool bare_symbol(const std::string& n) {
  if (n.size() != 1) return false;
  unsigned char c = static_cast<unsigned char>(n[0]);
  return std::islower(c) || std::isdigit(c) || c == '@';
}

/// Multi-character lowercase identifier; prints and parses as an Ident.
inline bool plain_identifier(const std::string& n) {
  if (n.size() < 2 || !std::islower(static_cast<unsigned char>(n[0]))) return false;
  for (char c : n)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

inline std::string quote(const std::string& n) {
  std::string out = "'";
  for (char c : n) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  return out + "'";
}

}  // namespace detail

inline std::string to_string(const ExprPtr& e);

namespace detail {
inline std::string wrap(const ExprPtr& e, int min_level) {
  std::string s = to_string(e);
  return level(e->op) < min_level ? "(" + s + ")" : s;
}
inline std::string join(const std::vector<ExprPtr>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += to_string(items[i]);
  }
  return out;
}
}  // namespace detail

/// Prints in the DSL syntax; parse_expr(to_string(e)) reproduces `e`.
inline std::string to_string(const ExprPtr& e) {
  using detail::wrap;
  switch (e->op) {
    case Op::kEmptyString:
      return "[]";
    case Op::kEmptyLang:
      return "{}";
    case Op::kSymbol:
      return detail::bare_symbol(e->name) ? e->name : detail::quote(e->name);
    case Op::kAny:
      return "?";
    case Op::kIdent:
      return e->name;
    case Op::kCall:
      return e->name + "(" + detail::join(e->args) + ")";
    case Op::kSeq:
      return "[" + detail::join(e->args) + "]";
    case Op::kUnion:
      return "{" + detail::join(e->args) + "}";
    case Op::kStar:
      return wrap(e->args[0], 6) + "*";
    case Op::kPlus:
      return wrap(e->args[0], 6) + "+";
    case Op::kOption:
      return wrap(e->args[0], 6) + "^";
    case Op::kComplement:
      return "~" + wrap(e->args[0], 5);
    case Op::kContainment:
      return "$" + wrap(e->args[0], 5);
    case Op::kCross:
      return wrap(e->args[0], 4) + " x " + wrap(e->args[1], 5);
    case Op::kDiff:
      return wrap(e->args[0], 3) + " - " + wrap(e->args[1], 4);
    case Op::kIntersect:
      return wrap(e->args[0], 2) + " & " + wrap(e->args[1], 3);
    case Op::kCompose:
      return wrap(e->args[0], 1) + " o " + wrap(e->args[1], 2);
    case Op::kLenient:
      return wrap(e->args[0], 1) + " lc " + wrap(e->args[1], 2);
    case Op::kOptimality: {
      std::string rhs = detail::plain_identifier(e->name) ? e->name : detail::quote(e->name);
      if (e->precision >= 0) rhs = std::to_string(e->precision) + " :: " + rhs;
      return wrap(e->args[0], 1) + " oo " + rhs;
    }
    case Op::kDomain:
      return "domain(" + to_string(e->args[0]) + ")";
    case Op::kRange:
      return "range(" + to_string(e->args[0]) + ")";
    case Op::kIdentity:
      return "identity(" + to_string(e->args[0]) + ")";
    case Op::kInverse:
      return "inverse(" + to_string(e->args[0]) + ")";
  }
  return "?";
}

}  // namespace otfst
