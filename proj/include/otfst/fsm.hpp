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
#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "otfst/alphabet.hpp"

namespace otfst {

using StateId = std::uint32_t;

/// One transition. Recognizer arcs carry identical input and output.
struct Arc {
  Sym in = kEpsilon;
  Sym out = kEpsilon;
  StateId to = 0;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Packs an arc label into a single key; used wherever a transducer is
/// treated as an automaton over pair symbols.
inline std::uint32_t pack_label(Sym in, Sym out) {
  return (static_cast<std::uint32_t>(in) << 16) | out;
}
inline Sym label_in(std::uint32_t key) { return static_cast<Sym>(key >> 16); }
inline Sym label_out(std::uint32_t key) { return static_cast<Sym>(key & 0xFFFF); }

/// Immutable finite-state machine over (input, output) pair labels.
///
/// A machine is a recognizer when every arc is identity-labelled; recognizers
/// and identity transductions are the same object. There is always at least
/// one state (the start state), so the empty language is a lone non-final
/// start state.
class Fsm {
 public:
  Fsm(AlphabetPtr alphabet, StateId start, std::vector<std::vector<Arc>> arcs,
      std::vector<char> finals)
      : alphabet_(std::move(alphabet)),
        start_(start),
        arcs_(std::move(arcs)),
        finals_(std::move(finals)) {
    if (!alphabet_) throw Error("machine without alphabet");
    if (arcs_.empty()) {
      arcs_.resize(1);
      finals_.assign(1, 0);
      start_ = 0;
    }
    if (finals_.size() != arcs_.size() || start_ >= arcs_.size())
      throw Error("malformed machine");
    for (const auto& row : arcs_) {
      for (const Arc& a : row) {
        if (a.to >= arcs_.size()) throw Error("arc target out of range");
        if (a.in > alphabet_->size() || a.out > alphabet_->size())
          throw Error("arc symbol outside alphabet");
        if (a.in != a.out) recognizer_ = false;
        if (a.in == kEpsilon && a.out == kEpsilon) eps_pairs_ = true;
        ++num_arcs_;
      }
    }
  }

  const AlphabetPtr& alphabet() const { return alphabet_; }
  StateId start() const { return start_; }
  std::size_t num_states() const { return arcs_.size(); }
  std::size_t num_arcs() const { return num_arcs_; }
  std::span<const Arc> arcs(StateId s) const { return arcs_[s]; }
  bool is_final(StateId s) const { return finals_[s] != 0; }
  bool is_recognizer() const { return recognizer_; }
  /// True when some arc is labelled (eps, eps).
  bool has_epsilon_pairs() const { return eps_pairs_; }

  const std::vector<std::vector<Arc>>& arc_table() const { return arcs_; }
  const std::vector<char>& final_table() const { return finals_; }

 private:
  AlphabetPtr alphabet_;
  StateId start_ = 0;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<char> finals_;
  std::size_t num_arcs_ = 0;
  bool recognizer_ = true;
  bool eps_pairs_ = false;
};

/// Mutable staging area for building a machine state by state.
class FsmBuilder {
 public:
  explicit FsmBuilder(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}

  StateId add_state(bool final = false) {
    arcs_.emplace_back();
    finals_.push_back(final ? 1 : 0);
    return static_cast<StateId>(arcs_.size() - 1);
  }
  void set_final(StateId s, bool final = true) { finals_.at(s) = final ? 1 : 0; }
  void set_start(StateId s) { start_ = s; }
  void add_arc(StateId from, Sym in, Sym out, StateId to) { arcs_.at(from).push_back({in, out, to}); }
  std::size_t num_states() const { return arcs_.size(); }
  const AlphabetPtr& alphabet() const { return alphabet_; }

  /// Copies all states of `m` into the builder; returns the offset of its
  /// state 0.
  StateId splice(const Fsm& m) {
    auto offset = static_cast<StateId>(arcs_.size());
    for (StateId s = 0; s < m.num_states(); ++s) {
      add_state(m.is_final(s));
      for (const Arc& a : m.arcs(s)) arcs_.back().push_back({a.in, a.out, a.to + offset});
    }
    return offset;
  }

  Fsm build() && { return Fsm(std::move(alphabet_), start_, std::move(arcs_), std::move(finals_)); }

 private:
  AlphabetPtr alphabet_;
  StateId start_ = 0;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<char> finals_;
};

// Primitive machines.

inline Fsm empty_language(AlphabetPtr sigma) {
  FsmBuilder b(std::move(sigma));
  b.add_state(false);
  return std::move(b).build();
}

inline Fsm empty_string(AlphabetPtr sigma) {
  FsmBuilder b(std::move(sigma));
  b.add_state(true);
  return std::move(b).build();
}

/// Accepts exactly the given symbol sequence.
inline Fsm word(AlphabetPtr sigma, std::span<const Sym> syms) {
  FsmBuilder b(std::move(sigma));
  StateId cur = b.add_state();
  for (Sym s : syms) {
    StateId next = b.add_state();
    b.add_arc(cur, s, s, next);
    cur = next;
  }
  b.set_final(cur);
  return std::move(b).build();
}

inline Fsm symbol(AlphabetPtr sigma, Sym s) {
  const Sym one[] = {s};
  return word(std::move(sigma), one);
}

/// One-symbol language over an explicit set.
inline Fsm symbol_set(AlphabetPtr sigma, std::span<const Sym> syms) {
  FsmBuilder b(std::move(sigma));
  StateId s0 = b.add_state();
  StateId s1 = b.add_state(true);
  std::vector<Sym> sorted(syms.begin(), syms.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (Sym s : sorted) b.add_arc(s0, s, s, s1);
  return std::move(b).build();
}

/// `?`: any single symbol of the alphabet.
inline Fsm any_symbol(const AlphabetPtr& sigma) { return symbol_set(sigma, sigma->symbols()); }

/// `?*`: the universal language.
inline Fsm sigma_star(const AlphabetPtr& sigma) {
  FsmBuilder b(sigma);
  StateId s = b.add_state(true);
  for (Sym x : sigma->symbols()) b.add_arc(s, x, x, s);
  return std::move(b).build();
}

/// Single-arc transducer mapping `in` to `out` (either may be epsilon).
inline Fsm pair(AlphabetPtr sigma, Sym in, Sym out) {
  FsmBuilder b(std::move(sigma));
  StateId s0 = b.add_state();
  StateId s1 = b.add_state(true);
  if (in == kEpsilon && out == kEpsilon) return empty_string(b.alphabet());
  b.add_arc(s0, in, out, s1);
  return std::move(b).build();
}

}  // namespace otfst
