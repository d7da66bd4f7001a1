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

// Reference semantics computed by exhaustive search over paths. These use
// only the Fsm accessors, never the library's algorithms, so they can serve
// as oracles for them.

#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "otfst/otfst.hpp"

namespace oracle {

using otfst::Arc;
using otfst::Fsm;
using otfst::StateId;
using otfst::Sym;
using otfst::Word;
using Relation = std::set<std::pair<Word, Word>>;

inline otfst::AlphabetPtr small_sigma() {
  static const auto s = std::make_shared<const otfst::Alphabet>(std::vector<std::string>{"a", "b", "c"});
  return s;
}

/// Every word over `syms` of length at most `max_len`.
inline std::vector<Word> all_words(const std::vector<Sym>& syms, unsigned max_len) {
  std::vector<Word> out{{}};
  std::size_t begin = 0;
  for (unsigned len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (Sym s : syms) {
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

/// Set-of-states simulation reading the input side only.
inline bool accepts(const Fsm& m, const Word& w) {
  std::set<StateId> cur{m.start()};
  auto close = [&](std::set<StateId> s) {
    std::vector<StateId> stack(s.begin(), s.end());
    while (!stack.empty()) {
      StateId q = stack.back();
      stack.pop_back();
      for (const Arc& a : m.arcs(q))
        if (a.in == otfst::kEpsilon && s.insert(a.to).second) stack.push_back(a.to);
    }
    return s;
  };
  cur = close(cur);
  for (Sym x : w) {
    std::set<StateId> next;
    for (StateId q : cur)
      for (const Arc& a : m.arcs(q))
        if (a.in == x) next.insert(a.to);
    cur = close(next);
  }
  for (StateId q : cur)
    if (m.is_final(q)) return true;
  return false;
}

inline std::set<Word> language(const Fsm& m, unsigned max_len) {
  std::set<Word> out;
  for (const Word& w : all_words(m.alphabet()->symbols(), max_len))
    if (accepts(m, w)) out.insert(w);
  return out;
}

/// Pairs with |input| <= max_in and |output| <= max_out, by breadth-first
/// search over (state, input, output) configurations.
inline Relation relation(const Fsm& m, unsigned max_in, unsigned max_out) {
  using Config = std::tuple<StateId, Word, Word>;
  std::set<Config> seen;
  std::vector<Config> work{{m.start(), {}, {}}};
  Relation out;
  while (!work.empty()) {
    Config c = std::move(work.back());
    work.pop_back();
    if (!seen.insert(c).second) continue;
    const auto& [q, in, o] = c;
    if (m.is_final(q)) out.emplace(in, o);
    for (const Arc& a : m.arcs(q)) {
      Word in2 = in, o2 = o;
      if (a.in != otfst::kEpsilon) in2.push_back(a.in);
      if (a.out != otfst::kEpsilon) o2.push_back(a.out);
      if (in2.size() > max_in || o2.size() > max_out) continue;
      work.emplace_back(a.to, std::move(in2), std::move(o2));
    }
  }
  return out;
}

/// Restricts a relation to pairs within both bounds.
inline Relation bounded(const Relation& r, unsigned max_in, unsigned max_out) {
  Relation out;
  for (const auto& p : r)
    if (p.first.size() <= max_in && p.second.size() <= max_out) out.insert(p);
  return out;
}

/// Outputs of length at most `max_out` for one input word.
inline std::set<Word> image(const Fsm& m, const Word& input, unsigned max_out) {
  using Config = std::tuple<StateId, std::size_t, Word>;
  std::set<Config> seen;
  std::vector<Config> work{{m.start(), 0, {}}};
  std::set<Word> out;
  while (!work.empty()) {
    Config c = std::move(work.back());
    work.pop_back();
    if (!seen.insert(c).second) continue;
    const auto& [q, pos, o] = c;
    if (pos == input.size() && m.is_final(q)) out.insert(o);
    for (const Arc& a : m.arcs(q)) {
      if (a.in != otfst::kEpsilon && (pos == input.size() || input[pos] != a.in)) continue;
      Word o2 = o;
      if (a.out != otfst::kEpsilon) o2.push_back(a.out);
      if (o2.size() > max_out) continue;
      work.emplace_back(a.to, pos + (a.in != otfst::kEpsilon), std::move(o2));
    }
  }
  return out;
}

/// Composition of a finite relation with a machine.
inline Relation compose(const Relation& a, const Fsm& b, unsigned max_out) {
  Relation out;
  for (const auto& [x, y] : a)
    for (const Word& z : image(b, y, max_out)) out.emplace(x, z);
  return out;
}

/// Random generators for small machines.
class Random {
 public:
  explicit Random(unsigned seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  /// Identity-labelled NFA, possibly with epsilon arcs.
  Fsm recognizer(const otfst::AlphabetPtr& sigma, int max_states = 4) {
    const auto syms = sigma->symbols();
    otfst::FsmBuilder b(sigma);
    const int n = uniform(1, max_states);
    for (int i = 0; i < n; ++i) b.add_state(chance(0.4));
    const int arcs = uniform(0, 2 * n + 1);
    for (int i = 0; i < arcs; ++i) {
      Sym s = chance(0.15) ? otfst::kEpsilon : syms[static_cast<std::size_t>(uniform(0, static_cast<int>(syms.size()) - 1))];
      b.add_arc(static_cast<StateId>(uniform(0, n - 1)), s, s, static_cast<StateId>(uniform(0, n - 1)));
    }
    return std::move(b).build();
  }

  /// Transducer whose input-epsilon arcs only go to higher-numbered states,
  /// so every input has a finite image.
  Fsm transducer(const otfst::AlphabetPtr& sigma, int max_states = 4, double eps = 0.2) {
    const auto syms = sigma->symbols();
    auto pick = [&] { return syms[static_cast<std::size_t>(uniform(0, static_cast<int>(syms.size()) - 1))]; };
    otfst::FsmBuilder b(sigma);
    const int n = uniform(1, max_states);
    for (int i = 0; i < n; ++i) b.add_state(chance(0.4));
    const int arcs = uniform(0, 2 * n + 2);
    for (int i = 0; i < arcs; ++i) {
      const StateId from = static_cast<StateId>(uniform(0, n - 1));
      const Sym out = chance(eps) ? otfst::kEpsilon : pick();
      if (chance(eps)) {
        if (static_cast<int>(from) + 1 >= n) continue;
        b.add_arc(from, otfst::kEpsilon, out, static_cast<StateId>(uniform(static_cast<int>(from) + 1, n - 1)));
      } else {
        b.add_arc(from, pick(), out, static_cast<StateId>(uniform(0, n - 1)));
      }
    }
    return std::move(b).build();
  }

 private:
  std::mt19937 rng_;
};

/// Groups a relation by input.
inline std::map<Word, std::set<Word>> images(const Relation& r) {
  std::map<Word, std::set<Word>> out;
  for (const auto& [i, o] : r) out[i].insert(o);
  return out;
}

}  // namespace oracle
