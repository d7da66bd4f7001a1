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
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "otfst/algebra.hpp"

namespace otfst {

namespace detail {

/// Complete deterministic recognizer with an explicit transition table.
struct CompleteDfa {
  std::size_t width = 0;  // alphabet size + 1; column 0 unused
  StateId start = 0;
  std::vector<StateId> next;
  std::vector<char> final;

  StateId step(StateId s, Sym a) const { return next[s * width + a]; }
  std::size_t size() const { return final.size(); }
};

inline CompleteDfa complete_dfa(const Fsm& recognizer) {
  const Fsm d = determinize(recognizer);
  CompleteDfa out;
  out.width = d.alphabet()->size() + 1;
  const StateId sink = static_cast<StateId>(d.num_states());
  out.next.assign((d.num_states() + 1) * out.width, sink);
  out.final.assign(d.num_states() + 1, 0);
  out.start = d.start();
  for (StateId s = 0; s < d.num_states(); ++s) {
    out.final[s] = d.is_final(s);
    for (const Arc& a : d.arcs(s)) out.next[s * out.width + a.in] = a.to;
  }
  return out;
}

/// States of `dfa` from which a final state is reachable.
inline std::vector<char> live_states(const CompleteDfa& dfa) {
  const std::size_t n = dfa.size();
  std::vector<std::vector<StateId>> rev(n);
  for (StateId s = 0; s < n; ++s)
    for (std::size_t a = 1; a < dfa.width; ++a) rev[dfa.next[s * dfa.width + a]].push_back(s);
  std::vector<char> live(n, 0);
  std::vector<StateId> stack;
  for (StateId s = 0; s < n; ++s)
    if (dfa.final[s]) {
      live[s] = 1;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    StateId t = stack.back();
    stack.pop_back();
    for (StateId p : rev[t])
      if (!live[p]) {
        live[p] = 1;
        stack.push_back(p);
      }
  }
  return live;
}

/// Pending right-context obligations.
///
/// A positive obligation is a state of the R.Sigma* automaton that must
/// reach acceptance before the input ends. A negative obligation is a state
/// of an automaton for (longer match).R.Sigma* that must never accept. Both
/// kinds are tracked as sets, so the construction stays finite.
class Obligations {
 public:
  Obligations(const CompleteDfa& right, const CompleteDfa* dom) : right_(right), dom_(dom) {
    right_live_ = live_states(right_);
    const std::size_t n = right_.size() + (dom_ ? 2 * dom_->size() : 0);
    // Liveness of negative-obligation states: can they reach an accepting
    // state of `right_`?
    neg_live_.assign(n, 0);
    for (StateId r = 0; r < right_.size(); ++r) neg_live_[r] = right_live_[r];
    if (dom_) {
      auto dom_live = live_states(*dom_);
      // (d, consumed) reaches a final dom state with at least one more
      // symbol, then needs right_.start to be live.
      for (StateId d = 0; d < dom_->size(); ++d)
        for (int c = 0; c < 2; ++c)
          neg_live_[dom_id(d, c)] = right_live_[right_.start] && reaches_final_after_step(d, c, dom_live);
    }
  }

  StateId right_start() const { return right_.start; }
  StateId dom_id(StateId d, int consumed) const {
    return static_cast<StateId>(right_.size() + 2 * d + consumed);
  }

  /// Adds a positive obligation; returns false if it can never be met.
  bool add_positive(std::vector<StateId>& pos, StateId r) const {
    if (right_.final[r]) return true;
    if (!right_live_[r]) return false;
    insert_sorted(pos, r);
    return true;
  }

  /// Adds a negative obligation; returns false if it is already violated.
  bool add_negative(std::vector<StateId>& neg, StateId o) const {
    std::vector<StateId> tmp{o};
    if (!close(tmp)) return false;
    for (StateId x : tmp) insert_sorted(neg, x);
    return true;
  }

  /// Advances both sets over one input symbol; false means a dead
  /// configuration.
  bool step(std::vector<StateId>& pos, std::vector<StateId>& neg, Sym a) const {
    std::vector<StateId> np;
    for (StateId r : pos) {
      StateId t = right_.step(r, a);
      if (right_.final[t]) continue;
      if (!right_live_[t]) return false;
      insert_sorted(np, t);
    }
    std::vector<StateId> nn;
    for (StateId o : neg) {
      if (o < right_.size()) {
        insert_sorted(nn, right_.step(o, a));
      } else {
        StateId d = (o - static_cast<StateId>(right_.size())) / 2;
        insert_sorted(nn, dom_id(dom_->step(d, a), 1));
      }
    }
    if (!close(nn)) return false;
    pos = std::move(np);
    neg = std::move(nn);
    return true;
  }

 private:
  static void insert_sorted(std::vector<StateId>& v, StateId x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
  }

  bool reaches_final_after_step(StateId d, int consumed, const std::vector<char>& dom_live) const {
    if (consumed && dom_->final[d]) return true;
    for (std::size_t a = 1; a < dom_->width; ++a)
      if (dom_live[dom_->step(d, static_cast<Sym>(a))]) return true;
    return false;
  }

  /// Epsilon closure and pruning; false if some state accepts.
  bool close(std::vector<StateId>& set) const {
    std::vector<StateId> out;
    for (StateId o : set) {
      if (o < right_.size()) {
        if (right_.final[o]) return false;
        if (neg_live_[o]) insert_sorted(out, o);
        continue;
      }
      StateId d = (o - static_cast<StateId>(right_.size())) / 2;
      int consumed = static_cast<int>((o - right_.size()) % 2);
      if (consumed && dom_->final[d]) {
        if (right_.final[right_.start]) return false;
        if (right_live_[right_.start]) insert_sorted(out, right_.start);
      }
      if (neg_live_[o]) insert_sorted(out, o);
    }
    set = std::move(out);
    return true;
  }

  const CompleteDfa& right_;
  const CompleteDfa* dom_;
  std::vector<char> right_live_;
  std::vector<char> neg_live_;
};

struct ReplaceKey {
  std::vector<StateId> data;
  bool operator==(const ReplaceKey&) const = default;
};
struct ReplaceKeyHash {
  std::size_t operator()(const ReplaceKey& k) const noexcept { return VecHash{}(k.data); }
};

struct ReplaceState {
  StateId mode = 0;
  StateId left = 0;  // state of the Sigma*.L automaton
  StateId t = 0;     // state inside the replaced transduction
  StateId d = 0;     // state of the domain automaton (matching only)
  std::vector<StateId> pos, neg;

  ReplaceKey key() const {
    ReplaceKey k;
    k.data = {mode, left, t, d, static_cast<StateId>(pos.size())};
    k.data.insert(k.data.end(), pos.begin(), pos.end());
    k.data.insert(k.data.end(), neg.begin(), neg.end());
    return k;
  }
};

}  // namespace detail

/// Obligatory left-to-right replacement: applies `t` at every position
/// whose input-side left context ends in `left` and whose input-side right
/// context begins with `right`; everything else is copied.
///
/// When the domain of `t` is just the empty string, one image of `t` is
/// inserted at every eligible position. Otherwise matches are chosen
/// leftmost-longest and do not overlap. A domain mixing the empty string
/// with non-empty strings is rejected.
inline Fsm replace(const Fsm& t0, const Fsm& left, const Fsm& right) {
  detail::require_same_alphabet(t0, left, "replace");
  detail::require_same_alphabet(t0, right, "replace");
  detail::require_recognizer(left, "replace context");
  detail::require_recognizer(right, "replace context");
  const Fsm t = normalize(t0);
  const AlphabetPtr& sigma = t.alphabet();
  const auto syms = sigma->symbols();

  const Fsm dom = minimize(domain(t));
  const bool dom_has_eps = dom.is_final(dom.start());
  const bool dom_has_nonempty = dom.num_arcs() > 0;
  if (!dom_has_eps && !dom_has_nonempty) return identity(sigma_star(sigma));
  if (dom_has_eps && dom_has_nonempty)
    throw Error("replace: transduction domain mixes the empty string with non-empty strings");
  const bool insertion = dom_has_eps;

  const detail::CompleteDfa left_dfa = detail::complete_dfa(concat(sigma_star(sigma), left));
  const detail::CompleteDfa right_dfa = detail::complete_dfa(concat(right, sigma_star(sigma)));
  detail::CompleteDfa dom_dfa;
  if (!insertion) dom_dfa = detail::complete_dfa(dom);
  const detail::Obligations obl(right_dfa, insertion ? nullptr : &dom_dfa);

  // Modes. Insertion: 0 = decide, 1 = inside t, 2 = decided.
  // Matching: 0 = copy or start a match, 1 = inside a match.
  std::unordered_map<detail::ReplaceKey, StateId, detail::ReplaceKeyHash> ids;
  std::vector<detail::ReplaceState> states;
  std::vector<std::vector<Arc>> arcs;
  std::vector<char> fin;

  auto intern = [&](detail::ReplaceState s) {
    auto [it, inserted] = ids.emplace(s.key(), static_cast<StateId>(states.size()));
    if (inserted) states.push_back(std::move(s));
    return it->second;
  };

  detail::ReplaceState init;
  init.left = left_dfa.start;
  intern(init);

  for (std::size_t i = 0; i < states.size(); ++i) {
    const detail::ReplaceState cur = states[i];
    std::vector<Arc> row;
    bool final = false;
    const bool context = left_dfa.final[cur.left] != 0;

    auto copy_moves = [&](const std::vector<StateId>& neg_base) {
      for (Sym a : syms) {
        detail::ReplaceState nx = cur;
        nx.mode = 0;
        nx.neg = neg_base;
        if (!obl.step(nx.pos, nx.neg, a)) continue;
        nx.left = left_dfa.step(cur.left, a);
        row.push_back({a, a, intern(std::move(nx))});
      }
    };

    if (insertion) {
      if (cur.mode == 0) {
        if (context) {
          detail::ReplaceState ins = cur;
          ins.mode = 1;
          ins.t = t.start();
          if (obl.add_positive(ins.pos, obl.right_start()))
            row.push_back({kEpsilon, kEpsilon, intern(std::move(ins))});
          detail::ReplaceState skip = cur;
          skip.mode = 2;
          if (obl.add_negative(skip.neg, obl.right_start()))
            row.push_back({kEpsilon, kEpsilon, intern(std::move(skip))});
        } else {
          detail::ReplaceState nx = cur;
          nx.mode = 2;
          row.push_back({kEpsilon, kEpsilon, intern(std::move(nx))});
        }
      } else if (cur.mode == 1) {
        for (const Arc& a : t.arcs(cur.t)) {
          detail::ReplaceState nx = cur;
          nx.t = a.to;
          row.push_back({kEpsilon, a.out, intern(std::move(nx))});
        }
        if (t.is_final(cur.t)) {
          detail::ReplaceState nx = cur;
          nx.mode = 2;
          nx.t = 0;
          row.push_back({kEpsilon, kEpsilon, intern(std::move(nx))});
        }
      } else {
        final = cur.pos.empty();
        copy_moves(cur.neg);
      }
    } else {
      if (cur.mode == 0) {
        final = cur.pos.empty();
        if (context) {
          detail::ReplaceState m = cur;
          m.mode = 1;
          m.t = t.start();
          m.d = dom_dfa.start;
          row.push_back({kEpsilon, kEpsilon, intern(std::move(m))});
          std::vector<StateId> neg = cur.neg;
          if (obl.add_negative(neg, obl.dom_id(dom_dfa.start, 0))) copy_moves(neg);
        } else {
          copy_moves(cur.neg);
        }
      } else {
        for (const Arc& a : t.arcs(cur.t)) {
          detail::ReplaceState nx = cur;
          nx.t = a.to;
          if (a.in != kEpsilon) {
            if (!obl.step(nx.pos, nx.neg, a.in)) continue;
            nx.left = left_dfa.step(cur.left, a.in);
            nx.d = dom_dfa.step(cur.d, a.in);
          }
          row.push_back({a.in, a.out, intern(std::move(nx))});
        }
        if (t.is_final(cur.t)) {
          detail::ReplaceState nx = cur;
          nx.mode = 0;
          nx.t = 0;
          nx.d = 0;
          if (obl.add_positive(nx.pos, obl.right_start()) &&
              obl.add_negative(nx.neg, obl.dom_id(cur.d, 0)))
            row.push_back({kEpsilon, kEpsilon, intern(std::move(nx))});
        }
      }
    }
    arcs.push_back(std::move(row));
    fin.push_back(final ? 1 : 0);
  }
  return normalize(Fsm(sigma, 0, std::move(arcs), std::move(fin)));
}

inline Fsm replace(const Fsm& t) {
  const Fsm eps = empty_string(t.alphabet());
  return replace(t, eps, eps);
}

/// `[[ [] x E, ?]*, [] x E]`: an instance of E at every position.
inline Fsm intro_each_pos(const Fsm& e) {
  const AlphabetPtr& sigma = e.alphabet();
  const Fsm ins = cross_product(empty_string(sigma), e);
  return concat(star(concat(ins, any_symbol(sigma))), ins);
}

/// Strings of `a` with strings of `b` freely interspersed.
inline Fsm ignore(const Fsm& a, const Fsm& b) {
  detail::require_recognizer(a, "ignore");
  detail::require_recognizer(b, "ignore");
  const AlphabetPtr& sigma = a.alphabet();
  const Fsm ins = star(cross_product(empty_string(sigma), b));
  const Fsm spread = concat(ins, star(concat(any_symbol(sigma), ins)));
  return range(compose(a, spread));
}

}  // namespace otfst
