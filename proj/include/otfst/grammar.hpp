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
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "otfst/compiler.hpp"
#include "otfst/functional.hpp"

namespace otfst {

/// One entry of a ranking as written in a grammar.
struct RankedConstraint {
  std::string name;
  std::optional<Method> method;
  std::optional<unsigned> precision;
};

/// Gen, macro definitions, constraint ranking and the symbols the matching
/// filter ignores.
struct Grammar {
  std::string name;
  MacroTable macros;  // prelude included
  ExprPtr gen;
  std::vector<RankedConstraint> ranking;
  ExprPtr erasable;  // null means the bracket symbols

  std::vector<std::string> constraint_names() const {
    std::vector<std::string> out;
    for (const auto& r : ranking) out.push_back(r.name);
    return out;
  }
};

inline Grammar grammar_from_source(std::string_view text, std::string name = "grammar") {
  GrammarSource src = parse_grammar(text);
  Grammar g;
  g.name = std::move(name);
  g.macros = prelude_macros();
  g.macros.add_all(src.macros);
  g.gen = src.gen ? src.gen : ex::ident("gen");
  for (const RankingItem& r : src.ranking) {
    RankedConstraint c{r.name, std::nullopt, r.precision};
    if (!r.method.empty()) c.method = parse_method(r.method);
    g.ranking.push_back(std::move(c));
  }
  g.erasable = src.erasable;
  return g;
}

inline Grammar load_grammar_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open grammar file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return grammar_from_source(ss.str(), path);
}

/// A fully resolved constraint application.
struct Step {
  std::string name;
  Method method = Method::counting;
  unsigned precision = 0;
};

/// Command-line style overrides for a grammar's ranking.
struct PlanOptions {
  std::optional<Method> method;
  std::optional<unsigned> all_precision;
  std::map<std::string, unsigned> precision;
};

/// Explicit overrides win over the grammar's annotations, which win over
/// counting at precision 0.
inline std::vector<Step> make_plan(const Grammar& g, const PlanOptions& opt = {}) {
  for (const auto& [name, p] : opt.precision) {
    (void)p;
    bool found = std::any_of(g.ranking.begin(), g.ranking.end(),
                             [&](const RankedConstraint& r) { return r.name == name; });
    if (!found) throw Error("precision given for unknown constraint '" + name + "'");
  }
  std::vector<Step> plan;
  for (const RankedConstraint& r : g.ranking) {
    Step s{r.name, Method::counting, 0};
    if (r.method) s.method = *r.method;
    if (opt.method) s.method = *opt.method;
    if (r.precision) s.precision = *r.precision;
    if (opt.all_precision) s.precision = *opt.all_precision;
    if (auto it = opt.precision.find(r.name); it != opt.precision.end()) s.precision = it->second;
    plan.push_back(std::move(s));
  }
  return plan;
}

/// Compiles the pieces of a grammar once and folds constraint
/// applications over them.
class GrammarCompiler {
 public:
  explicit GrammarCompiler(const Grammar& g, AlphabetPtr sigma = Alphabet::standard())
      : grammar_(g), sigma_(std::move(sigma)) {
    ctx_.sigma = sigma_;
    gen_ = compile(expand(g.gen, g.macros), ctx_);
    erasable_ = g.erasable ? compile(expand(g.erasable, g.macros), ctx_) : default_erasable(sigma_);
  }

  const Grammar& grammar() const { return grammar_; }
  const AlphabetPtr& sigma() const { return sigma_; }
  const Fsm& gen() const { return gen_; }
  const Fsm& erasable() const { return erasable_; }

  const Fsm& marker(const std::string& constraint) {
    auto it = markers_.find(constraint);
    if (it == markers_.end())
      it = markers_.emplace(constraint, compile(expand_marker(constraint, grammar_.macros), ctx_)).first;
    return it->second;
  }

  ViolationCache& cache() {
    if (!cache_) cache_ = std::make_unique<ViolationCache>(make_eraser(erasable_));
    return *cache_;
  }

  /// The matching filter compares candidates of one input by their erased
  /// form, so erasing Gen's output must identify the input.
  void lint_matching() {
    if (linted_) return;
    const Fsm erased = compose(gen_, cache().eraser().deleter);
    if (!is_functional(inverse(erased)))
      throw Error("Gen modifies input; matching filter unsound");
    linted_ = true;
  }

  Fsm apply_step(const Fsm& cands, const Step& s) {
    if (s.method != Method::counting) lint_matching();
    return minimize(optimality(cands, marker(s.name), s.method, s.precision, cache()));
  }

  /// Left fold of the plan over `cands` (Gen by default).
  Fsm compile_plan(const std::vector<Step>& plan, std::optional<Fsm> cands = std::nullopt) {
    Fsm m = cands ? *cands : gen_;
    for (const Step& s : plan) m = apply_step(m, s);
    return minimize(m);
  }

 private:
  Grammar grammar_;
  AlphabetPtr sigma_;
  CompileContext ctx_;
  Fsm gen_ = empty_language(Alphabet::standard());
  Fsm erasable_ = empty_language(Alphabet::standard());
  std::map<std::string, Fsm> markers_;
  std::unique_ptr<ViolationCache> cache_;
  bool linted_ = false;
};

inline Fsm compile_grammar(const Grammar& g, const PlanOptions& opt = {}) {
  GrammarCompiler c(g);
  return c.compile_plan(make_plan(g, opt));
}

/// Number of markers the constraint's marker inserts into `candidate`
/// (the fewest, should it be ambiguous).
inline std::size_t count_violations(const Fsm& marker, const Word& candidate, Sym at) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const Word& w : apply_symbols(marker, candidate))
    best = std::min<std::size_t>(best, static_cast<std::size_t>(std::count(w.begin(), w.end(), at)));
  if (best == std::numeric_limits<std::size_t>::max())
    throw Error("constraint marker rejects a candidate");
  return best;
}

/// Every candidate of `input` with its violation counts, one per entry of
/// `constraints`.
inline std::map<Word, std::vector<std::size_t>> violation_profiles(GrammarCompiler& c,
                                                                   const std::vector<std::string>& constraints,
                                                                   const Word& input) {
  const Sym at = marker_symbol(c.sigma());
  std::map<Word, std::vector<std::size_t>> out;
  for (const Word& cand : apply_symbols(c.gen(), input)) {
    std::vector<std::size_t> v;
    v.reserve(constraints.size());
    for (const auto& name : constraints) v.push_back(count_violations(c.marker(name), cand, at));
    out.emplace(cand, std::move(v));
  }
  return out;
}

/// OT evaluation by definition: candidates with lexicographically minimal
/// violation vectors under the ranking order.
inline std::set<Word> optimal_candidates(const std::map<Word, std::vector<std::size_t>>& profiles) {
  std::set<Word> out;
  const std::vector<std::size_t>* best = nullptr;
  for (const auto& [cand, v] : profiles) {
    if (!best || v < *best) {
      best = &v;
      out.clear();
    }
    if (v == *best) out.insert(cand);
  }
  return out;
}

inline std::set<std::string> brute_force_eval(GrammarCompiler& c, const std::string& input) {
  const Word in = c.sigma()->tokenize(input);
  std::set<std::string> out;
  for (const Word& w : optimal_candidates(violation_profiles(c, c.grammar().constraint_names(), in)))
    out.insert(c.sigma()->render(w));
  return out;
}

inline std::set<std::string> brute_force_eval(const Grammar& g, const std::string& input) {
  GrammarCompiler c(g);
  return brute_force_eval(c, input);
}

}  // namespace otfst
