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

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "otfst/algebra.hpp"

namespace otfst {

/// Raised when a relation maps some input to infinitely many outputs.
class InfiniteAmbiguity : public Error {
 public:
  InfiniteAmbiguity() : Error("infinite ambiguity") {}
};

using Word = std::vector<Sym>;

namespace detail {

/// True if the trimmed machine has a cycle.
inline bool has_cycle(const Fsm& m) {
  const std::size_t n = m.num_states();
  std::vector<char> color(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<std::pair<StateId, std::size_t>> stack;
  for (StateId root = 0; root < n; ++root) {
    if (color[root]) continue;
    stack.emplace_back(root, 0);
    color[root] = 1;
    while (!stack.empty()) {
      auto& [s, i] = stack.back();
      if (i < m.arcs(s).size()) {
        StateId t = m.arcs(s)[i++].to;
        if (color[t] == 1) return true;
        if (color[t] == 0) {
          color[t] = 1;
          stack.emplace_back(t, 0);
        }
      } else {
        color[s] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

/// All (input, output) label paths of an acyclic trimmed machine.
inline void collect_paths(const Fsm& m, std::set<std::pair<Word, Word>>& out) {
  Word in, outw;
  auto rec = [&](auto& self, StateId s) -> void {
    if (m.is_final(s)) out.emplace(in, outw);
    for (const Arc& a : m.arcs(s)) {
      if (a.in != kEpsilon) in.push_back(a.in);
      if (a.out != kEpsilon) outw.push_back(a.out);
      self(self, a.to);
      if (a.in != kEpsilon) in.pop_back();
      if (a.out != kEpsilon) outw.pop_back();
    }
  };
  rec(rec, m.start());
}

struct NeedsExactPath {};

/// Direct simulation; throws NeedsExactPath when an input-epsilon cycle
/// may be involved.
inline std::set<Word> simulate(const Fsm& t, std::span<const Sym> input) {
  using Config = std::pair<StateId, Word>;
  const std::size_t limit = t.num_states() + 1;
  auto closure = [&](std::set<Config> seeds) {
    std::set<Config> done;
    std::vector<std::pair<Config, std::size_t>> work;
    for (auto& c : seeds) work.emplace_back(c, 0);
    while (!work.empty()) {
      auto [c, depth] = std::move(work.back());
      work.pop_back();
      if (!done.insert(c).second) continue;
      for (const Arc& a : t.arcs(c.first)) {
        if (a.in != kEpsilon) continue;
        if (depth + 1 > limit) throw NeedsExactPath{};
        Word w = c.second;
        if (a.out != kEpsilon) w.push_back(a.out);
        work.emplace_back(Config{a.to, std::move(w)}, depth + 1);
      }
    }
    return done;
  };
  std::set<Config> cur = closure({Config{t.start(), {}}});
  for (Sym x : input) {
    std::set<Config> next;
    for (const auto& [s, w] : cur)
      for (const Arc& a : t.arcs(s)) {
        if (a.in != x) continue;
        Word v = w;
        if (a.out != kEpsilon) v.push_back(a.out);
        next.emplace(a.to, std::move(v));
      }
    if (next.empty()) return {};
    cur = closure(std::move(next));
  }
  std::set<Word> out;
  for (const auto& [s, w] : cur)
    if (t.is_final(s)) out.insert(w);
  return out;
}

}  // namespace detail

/// Image of `input` under the relation. Throws InfiniteAmbiguity if the
/// image is infinite.
inline std::set<Word> apply_symbols(const Fsm& t0, std::span<const Sym> input) {
  const Fsm t = t0.has_epsilon_pairs() ? normalize(t0) : t0;
  try {
    return detail::simulate(t, input);
  } catch (const detail::NeedsExactPath&) {
  }
  const Fsm image = normalize(range(compose(word(t.alphabet(), input), t)));
  if (detail::has_cycle(image)) throw InfiniteAmbiguity();
  std::set<std::pair<Word, Word>> paths;
  detail::collect_paths(image, paths);
  std::set<Word> out;
  for (auto& [i, o] : paths) out.insert(o);
  return out;
}

/// String-level apply: tokenizes `input` against the machine's alphabet and
/// renders outputs, sorted lexicographically.
inline std::set<std::string> apply(const Fsm& t, std::string_view input) {
  const auto& sigma = *t.alphabet();
  std::set<std::string> out;
  for (const Word& w : apply_symbols(t, sigma.tokenize(input))) out.insert(sigma.render(w));
  return out;
}

/// Recognizer for all strings of length at most `n`.
inline Fsm up_to_length(const AlphabetPtr& sigma, unsigned n) {
  return power(option(any_symbol(sigma)), n);
}

/// All pairs of the relation whose input has length <= max_input_len.
inline std::set<std::pair<Word, Word>> enumerate_pair_words(const Fsm& t, unsigned max_input_len) {
  const Fsm restricted = compose(up_to_length(t.alphabet(), max_input_len), t);
  if (detail::has_cycle(restricted)) throw InfiniteAmbiguity();
  std::set<std::pair<Word, Word>> out;
  if (restricted.num_states() == 1 && !restricted.is_final(0) && restricted.arcs(0).empty())
    return out;
  detail::collect_paths(restricted, out);
  return out;
}

inline std::set<std::pair<std::string, std::string>> enumerate_pairs(const Fsm& t, unsigned max_input_len) {
  const auto& sigma = *t.alphabet();
  std::set<std::pair<std::string, std::string>> out;
  for (auto& [i, o] : enumerate_pair_words(t, max_input_len)) out.emplace(sigma.render(i), sigma.render(o));
  return out;
}

/// Strings of a recognizer up to the given length.
inline std::set<std::string> enumerate_strings(const Fsm& a, unsigned max_len) {
  std::set<std::string> out;
  for (auto& [i, o] : enumerate_pairs(a, max_len)) out.insert(i);
  return out;
}

}  // namespace otfst
