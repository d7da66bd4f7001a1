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

#include <algorithm>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "otfst/parser.hpp"

namespace otfst {

/// Names handled by the compiler rather than by macro expansion.
inline bool is_builtin(std::string_view name) {
  return name == "replace" || name == "intro_each_pos" || name == "ignore";
}

/// Ordered macro clauses. Clauses with the same name are tried in
/// definition order; the first whose head matches wins.
class MacroTable {
 public:
  MacroTable() = default;

  void add(MacroClause clause) {
    if (is_builtin(clause.name)) throw Error("cannot redefine builtin '" + clause.name + "'");
    clauses_.push_back(std::move(clause));
  }

  void add_all(const std::vector<MacroClause>& clauses) {
    for (const auto& c : clauses) add(c);
  }

  /// Adds every clause of a `macro(...)` text.
  void load(std::string_view text) { add_all(parse_grammar(text).macros); }

  bool defines(std::string_view name) const {
    return std::any_of(clauses_.begin(), clauses_.end(),
                       [&](const MacroClause& c) { return c.name == name; });
  }

  const std::vector<MacroClause>& clauses() const { return clauses_; }

 private:
  std::vector<MacroClause> clauses_;
};

/// The operator macros every grammar can use.
inline constexpr std::string_view kPrelude = R"(
macro(priority_union(Q,R), {Q, ~domain(Q) o R}).
macro(lenient_composition(S,C), priority_union(S o C, S)).
)";

inline MacroTable prelude_macros() {
  MacroTable t;
  t.load(kPrelude);
  return t;
}

namespace detail {

using Bindings = std::map<std::string, ExprPtr>;

inline bool atom_like(const ExprPtr& e) { return e->op == Op::kIdent || e->op == Op::kSymbol; }

inline bool match_pattern(const ExprPtr& pattern, const ExprPtr& arg, Bindings& b) {
  if (pattern->op == Op::kIdent && is_variable_name(pattern->name)) {
    auto [it, inserted] = b.emplace(pattern->name, arg);
    return inserted || equal(it->second, arg);
  }
  if (atom_like(pattern) && atom_like(arg)) return pattern->name == arg->name;
  if (pattern->op != arg->op || pattern->name != arg->name ||
      pattern->precision != arg->precision || pattern->args.size() != arg->args.size())
    return false;
  for (std::size_t i = 0; i < pattern->args.size(); ++i)
    if (!match_pattern(pattern->args[i], arg->args[i], b)) return false;
  return true;
}

inline ExprPtr substitute(const ExprPtr& e, const Bindings& b) {
  if (e->op == Op::kIdent && is_variable_name(e->name)) {
    auto it = b.find(e->name);
    if (it == b.end()) throw Error("unbound macro variable '" + e->name + "'");
    return it->second;
  }
  if (e->args.empty()) return e;
  std::vector<ExprPtr> args;
  args.reserve(e->args.size());
  for (const auto& a : e->args) args.push_back(substitute(a, b));
  return ex::make(e->op, std::move(args), e->name, e->precision);
}

class Expander {
 public:
  explicit Expander(const MacroTable& table) : table_(table) {}

  ExprPtr run(const ExprPtr& e) {
    switch (e->op) {
      case Op::kIdent:
        if (is_variable_name(e->name)) throw Error("unbound macro variable '" + e->name + "'");
        return call(e->name, {});
      case Op::kCall:
        if (is_builtin(e->name) && !table_.defines(e->name)) return rebuild(e);
        return call(e->name, e->args);
      case Op::kOptimality: {
        ExprPtr cands = run(e->args[0]);
        ExprPtr marker = marker_for(e->name);
        return ex::make(Op::kOptimality, {cands, marker}, e->name, e->precision);
      }
      default:
        return rebuild(e);
    }
  }

  /// Expands `mark_violation(<name>)`.
  ExprPtr marker_for(const std::string& constraint) {
    return call("mark_violation", {ex::ident(constraint)});
  }

 private:
  ExprPtr rebuild(const ExprPtr& e) {
    if (e->args.empty()) return e;
    std::vector<ExprPtr> args;
    args.reserve(e->args.size());
    for (const auto& a : e->args) args.push_back(run(a));
    return ex::make(e->op, std::move(args), e->name, e->precision);
  }

  ExprPtr call(const std::string& name, const std::vector<ExprPtr>& args) {
    bool named = false, arity = false;
    for (const MacroClause& c : table_.clauses()) {
      if (c.name != name) continue;
      named = true;
      if (c.params.size() != args.size()) continue;
      arity = true;
      Bindings b;
      bool ok = true;
      for (std::size_t i = 0; ok && i < args.size(); ++i) ok = match_pattern(c.params[i], args[i], b);
      if (!ok) continue;
      if (std::find(active_.begin(), active_.end(), name) != active_.end())
        throw Error("recursive macro '" + name + "'");
      active_.push_back(name);
      ExprPtr out = run(substitute(c.body, b));
      active_.pop_back();
      return out;
    }
    std::string shown = args.empty() ? name : to_string(ex::call(name, args));
    if (!named) throw Error("unknown macro '" + shown + "'");
    if (!arity) throw Error("arity mismatch in call to '" + name + "'");
    throw Error("no clause of '" + name + "' matches " + shown);
  }

  const MacroTable& table_;
  std::vector<std::string> active_;
};

}  // namespace detail

/// Expands every macro call; the result mentions only symbols, operators
/// and builtins. Optimality nodes gain their violation marker as a second
/// argument.
inline ExprPtr expand(const ExprPtr& e, const MacroTable& table) {
  return detail::Expander(table).run(e);
}

/// Expansion of `mark_violation(<constraint>)`.
inline ExprPtr expand_marker(const std::string& constraint, const MacroTable& table) {
  return detail::Expander(table).marker_for(constraint);
}

}  // namespace otfst
