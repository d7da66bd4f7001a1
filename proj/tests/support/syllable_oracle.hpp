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

// Optimal syllabifications computed without any constraint transducer:
// the five constraints are counted directly on candidate strings, and the
// lexicographically least violation vector is found by dynamic programming
// over the deterministic, acyclic automaton of one input's candidates.

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "otfst/otfst.hpp"

namespace oracle {

class SyllableOracle {
 public:
  explicit SyllableOracle(const Fsm& gen) : gen_(gen), sigma_(gen.alphabet()) {
    o_ = sigma_->id("O[");
    n_ = sigma_->id("N[");
    d_ = sigma_->id("D[");
    x_ = sigma_->id("X[");
    r_ = sigma_->id("]");
    for (const char* c : {"b", "c", "d", "f", "g", "h", "j", "k", "l", "m", "n",
                          "p", "q", "r", "s", "t", "v", "w", "x", "y", "z"})
      cons_.insert(sigma_->id(c));
  }

  /// Optimal candidates for `input` under `ranking` (constraint names).
  std::set<std::string> eval(const std::vector<std::string>& ranking, const std::string& input) {
    ranking_ = ranking;
    const otfst::Word in = sigma_->tokenize(input);
    cands_ = otfst::minimize(otfst::range(otfst::compose(otfst::word(sigma_, in), gen_)));
    memo_.clear();
    std::set<std::string> out;
    if (otfst::is_empty(cands_)) return out;
    Word prefix;
    collect(cands_.start(), Ctx{}, prefix, out);
    return out;
  }

  /// Violation counts of a single candidate, in `ranking` order.
  std::vector<int> profile(const std::vector<std::string>& ranking, const Word& cand) {
    ranking_ = ranking;
    std::vector<int> v(ranking.size(), 0);
    Ctx ctx{};
    for (Sym t : cand) {
      add(v, cost(ctx, t));
      ctx = shift(ctx, t);
    }
    return v;
  }

 private:
  using Ctx = std::array<Sym, 3>;  // last three tokens, most recent last
  using Cost = std::vector<int>;

  static Ctx shift(Ctx c, Sym t) { return {c[1], c[2], t}; }
  static void add(Cost& a, const Cost& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  }

  int violations(const std::string& name, const Ctx& c, Sym t) const {
    if (name == "parse") return t == x_;
    if (name == "no_coda") return t == d_;
    if (name == "fill_nuc") return t == r_ && c[2] == n_;
    if (name == "fill_ons") return t == r_ && c[2] == o_;
    if (name == "have_ons") {
      if (t != n_) return 0;
      const bool empty_onset = c[1] == o_ && c[2] == r_;
      const bool full_onset = c[0] == o_ && cons_.count(c[1]) && c[2] == r_;
      return !(empty_onset || full_onset);
    }
    throw otfst::Error("oracle: unknown constraint " + name);
  }

  Cost cost(const Ctx& c, Sym t) const {
    Cost v;
    for (const auto& name : ranking_) v.push_back(violations(name, c, t));
    return v;
  }

  /// Least violation vector of any completion from (q, ctx); empty when
  /// no completion exists.
  const Cost& best(StateId q, const Ctx& c) {
    auto key = std::make_pair(q, c);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Cost b;
    if (cands_.is_final(q)) b.assign(ranking_.size(), 0);
    for (const Arc& a : cands_.arcs(q)) {
      const Cost& rest = best(a.to, shift(c, a.in));
      if (rest.empty()) continue;
      Cost total = cost(c, a.in);
      add(total, rest);
      if (b.empty() || total < b) b = std::move(total);
    }
    return memo_[key] = std::move(b);
  }

  void collect(StateId q, const Ctx& c, Word& prefix, std::set<std::string>& out) {
    const Cost target = best(q, c);
    if (cands_.is_final(q) && target == Cost(ranking_.size(), 0)) out.insert(sigma_->render(prefix));
    for (const Arc& a : cands_.arcs(q)) {
      const Ctx c2 = shift(c, a.in);
      const Cost& rest = best(a.to, c2);
      if (rest.empty()) continue;
      Cost total = cost(c, a.in);
      add(total, rest);
      if (total != target) continue;
      prefix.push_back(a.in);
      collect(a.to, c2, prefix, out);
      prefix.pop_back();
    }
  }

  Fsm gen_;
  otfst::AlphabetPtr sigma_;
  Sym o_ = 0, n_ = 0, d_ = 0, x_ = 0, r_ = 0;
  std::set<Sym> cons_;
  std::vector<std::string> ranking_;
  Fsm cands_ = otfst::empty_language(otfst::Alphabet::standard());
  std::map<std::pair<StateId, Ctx>, Cost> memo_;
};

}  // namespace oracle
