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

/// The closed set of operations every higher layer compiles into. All
/// operations are pure and return normalized machines: no (eps, eps) arcs,
/// every state accessible and co-accessible (except a lone start state for
/// the empty language), states numbered in breadth-first order.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "otfst/fsm.hpp"

namespace otfst {

namespace detail {

struct VecHash {
  std::size_t operator()(const std::vector<StateId>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (StateId x : v) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

inline void require_same_alphabet(const Fsm& a, const Fsm& b, const char* op) {
  if (!same_alphabet(a.alphabet(), b.alphabet()))
    throw Error(std::string("alphabet mismatch in ") + op);
}

inline void require_recognizer(const Fsm& a, const char* op) {
  if (!a.is_recognizer()) throw Error(std::string("operation undefined for relations: ") + op);
}

/// Removes (eps, eps) arcs; keeps all states.
inline std::pair<std::vector<std::vector<Arc>>, std::vector<char>> remove_epsilon_pairs(const Fsm& m) {
  const std::size_t n = m.num_states();
  std::vector<std::vector<Arc>> arcs(n);
  std::vector<char> fin(n, 0);
  if (!m.has_epsilon_pairs()) {
    for (StateId s = 0; s < n; ++s) {
      arcs[s].assign(m.arcs(s).begin(), m.arcs(s).end());
      fin[s] = m.is_final(s);
    }
    return {std::move(arcs), std::move(fin)};
  }
  std::vector<StateId> stamp(n, 0);
  std::vector<StateId> stack;
  for (StateId s = 0; s < n; ++s) {
    const StateId mark = s + 1;
    stack.assign(1, s);
    stamp[s] = mark;
    while (!stack.empty()) {
      StateId t = stack.back();
      stack.pop_back();
      if (m.is_final(t)) fin[s] = 1;
      for (const Arc& a : m.arcs(t)) {
        if (a.in == kEpsilon && a.out == kEpsilon) {
          if (stamp[a.to] != mark) {
            stamp[a.to] = mark;
            stack.push_back(a.to);
          }
        } else {
          arcs[s].push_back(a);
        }
      }
    }
  }
  return {std::move(arcs), std::move(fin)};
}

}  // namespace detail

/// Removes (eps, eps) arcs, trims, renumbers breadth-first from the start
/// state, and sorts and deduplicates arcs.
inline Fsm normalize(const Fsm& m) {
  auto [arcs, fin] = detail::remove_epsilon_pairs(m);
  const std::size_t n = arcs.size();
  for (auto& row : arcs) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }

  // Co-accessibility over reversed arcs.
  std::vector<std::vector<StateId>> rev(n);
  for (StateId s = 0; s < n; ++s)
    for (const Arc& a : arcs[s]) rev[a.to].push_back(s);
  std::vector<char> coacc(n, 0);
  std::vector<StateId> stack;
  for (StateId s = 0; s < n; ++s)
    if (fin[s]) {
      coacc[s] = 1;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    StateId t = stack.back();
    stack.pop_back();
    for (StateId p : rev[t])
      if (!coacc[p]) {
        coacc[p] = 1;
        stack.push_back(p);
      }
  }

  constexpr StateId kNone = ~StateId{0};
  std::vector<StateId> id(n, kNone);
  std::vector<StateId> order;
  id[m.start()] = 0;
  order.push_back(m.start());
  if (coacc[m.start()]) {
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (const Arc& a : arcs[order[i]]) {
        if (coacc[a.to] && id[a.to] == kNone) {
          id[a.to] = static_cast<StateId>(order.size());
          order.push_back(a.to);
        }
      }
    }
  }

  std::vector<std::vector<Arc>> out(order.size());
  std::vector<char> out_fin(order.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    StateId s = order[i];
    out_fin[i] = fin[s];
    if (!coacc[m.start()]) break;
    for (const Arc& a : arcs[s])
      if (coacc[a.to]) out[i].push_back({a.in, a.out, id[a.to]});
    std::sort(out[i].begin(), out[i].end());
  }
  return Fsm(m.alphabet(), 0, std::move(out), std::move(out_fin));
}

// Regular combinations.

inline Fsm union_(const Fsm& a, const Fsm& b) {
  detail::require_same_alphabet(a, b, "union");
  FsmBuilder out(a.alphabet());
  StateId s = out.add_state();
  StateId oa = out.splice(a);
  StateId ob = out.splice(b);
  out.add_arc(s, kEpsilon, kEpsilon, oa + a.start());
  out.add_arc(s, kEpsilon, kEpsilon, ob + b.start());
  out.set_start(s);
  return normalize(std::move(out).build());
}

inline Fsm concat(const Fsm& a, const Fsm& b) {
  detail::require_same_alphabet(a, b, "concatenation");
  FsmBuilder out(a.alphabet());
  StateId oa = out.splice(a);
  StateId ob = out.splice(b);
  for (StateId s = 0; s < a.num_states(); ++s) {
    if (a.is_final(s)) {
      out.set_final(oa + s, false);
      out.add_arc(oa + s, kEpsilon, kEpsilon, ob + b.start());
    }
  }
  out.set_start(oa + a.start());
  return normalize(std::move(out).build());
}

inline Fsm star(const Fsm& a) {
  FsmBuilder out(a.alphabet());
  StateId s = out.add_state(true);
  StateId oa = out.splice(a);
  out.add_arc(s, kEpsilon, kEpsilon, oa + a.start());
  for (StateId q = 0; q < a.num_states(); ++q)
    if (a.is_final(q)) out.add_arc(oa + q, kEpsilon, kEpsilon, s);
  out.set_start(s);
  return normalize(std::move(out).build());
}

inline Fsm plus(const Fsm& a) {
  FsmBuilder out(a.alphabet());
  StateId oa = out.splice(a);
  for (StateId q = 0; q < a.num_states(); ++q)
    if (a.is_final(q)) out.add_arc(oa + q, kEpsilon, kEpsilon, oa + a.start());
  out.set_start(oa + a.start());
  return normalize(std::move(out).build());
}

inline Fsm option(const Fsm& a) { return union_(a, empty_string(a.alphabet())); }

/// Concatenation of `n` copies of `a`.
inline Fsm power(const Fsm& a, unsigned n) {
  Fsm out = empty_string(a.alphabet());
  for (unsigned i = 0; i < n; ++i) out = concat(out, a);
  return out;
}

/// Treats each (input, output) pair as an atomic symbol and applies the
/// subset construction. For recognizers this is ordinary determinization.
inline Fsm determinize(const Fsm& m0) {
  const Fsm m = m0.has_epsilon_pairs() ? normalize(m0) : m0;
  std::unordered_map<std::vector<StateId>, StateId, detail::VecHash> ids;
  std::vector<std::vector<StateId>> subsets;
  subsets.push_back({m.start()});
  ids.emplace(subsets[0], 0);
  std::vector<std::vector<Arc>> arcs;
  std::vector<char> fin;
  std::vector<std::pair<std::uint32_t, StateId>> moves;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    moves.clear();
    bool final = false;
    for (StateId s : subsets[i]) {
      final = final || m.is_final(s);
      for (const Arc& a : m.arcs(s)) moves.emplace_back(pack_label(a.in, a.out), a.to);
    }
    std::sort(moves.begin(), moves.end());
    std::vector<Arc> row;
    for (std::size_t j = 0; j < moves.size();) {
      std::size_t k = j;
      std::vector<StateId> target;
      for (; k < moves.size() && moves[k].first == moves[j].first; ++k)
        if (target.empty() || target.back() != moves[k].second) target.push_back(moves[k].second);
      auto [it, inserted] = ids.emplace(target, static_cast<StateId>(subsets.size()));
      if (inserted) subsets.push_back(std::move(target));
      row.push_back({label_in(moves[j].first), label_out(moves[j].first), it->second});
      j = k;
    }
    arcs.push_back(std::move(row));
    fin.push_back(final ? 1 : 0);
    std::vector<StateId>().swap(subsets[i]);
  }
  return normalize(Fsm(m.alphabet(), 0, std::move(arcs), std::move(fin)));
}

namespace detail {

/// Refinable partition used by the partial-DFA minimizer (Valmari and
/// Lehtinen style).
struct RefinablePartition {
  int sets = 0;
  std::vector<int> elems, loc, set_of, first, past, marked, touched;
  int num_touched = 0;

  void init(int n) {
    sets = n > 0 ? 1 : 0;
    elems.resize(n);
    loc.resize(n);
    set_of.assign(n, 0);
    first.assign(n + 1, 0);
    past.assign(n + 1, 0);
    marked.assign(n + 1, 0);
    touched.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) elems[i] = loc[i] = i;
    if (sets) past[0] = n;
  }

  void mark(int e) {
    int s = set_of[e], i = loc[e], j = first[s] + marked[s];
    elems[i] = elems[j];
    loc[elems[i]] = i;
    elems[j] = e;
    loc[e] = j;
    if (!marked[s]++) touched[num_touched++] = s;
  }

  void split() {
    while (num_touched) {
      int s = touched[--num_touched], j = first[s] + marked[s];
      if (j == past[s]) {
        marked[s] = 0;
        continue;
      }
      if (marked[s] <= past[s] - j) {
        first[sets] = first[s];
        past[sets] = first[s] = j;
      } else {
        past[sets] = past[s];
        first[sets] = past[s] = j;
      }
      for (int i = first[sets]; i < past[sets]; ++i) set_of[elems[i]] = sets;
      marked[s] = marked[sets++] = 0;
    }
  }
};

/// Minimizes a trim deterministic machine over pair labels.
inline Fsm minimize_dfa(const Fsm& dfa) {
  const int n = static_cast<int>(dfa.num_states());
  std::vector<int> tail, head;
  std::vector<std::uint32_t> label;
  for (StateId s = 0; s < dfa.num_states(); ++s)
    for (const Arc& a : dfa.arcs(s)) {
      tail.push_back(static_cast<int>(s));
      head.push_back(static_cast<int>(a.to));
      label.push_back(pack_label(a.in, a.out));
    }
  const int m = static_cast<int>(tail.size());

  RefinablePartition blocks, cords;
  blocks.init(n);
  for (int q = 0; q < n; ++q)
    if (dfa.is_final(q)) blocks.mark(q);
  blocks.split();

  cords.init(m);
  if (m > 0) {
    std::sort(cords.elems.begin(), cords.elems.end(),
              [&](int x, int y) { return label[x] < label[y]; });
    cords.sets = 0;
    cords.marked[0] = 0;
    std::uint32_t cur = label[cords.elems[0]];
    for (int i = 0; i < m; ++i) {
      int t = cords.elems[i];
      if (label[t] != cur) {
        cur = label[t];
        cords.past[cords.sets++] = i;
        cords.first[cords.sets] = i;
        cords.marked[cords.sets] = 0;
      }
      cords.set_of[t] = cords.sets;
      cords.loc[t] = i;
    }
    cords.past[cords.sets++] = m;
  }

  // Incoming transitions per state.
  std::vector<int> in_first(n + 1, 0), in_list(m);
  for (int t = 0; t < m; ++t) ++in_first[head[t]];
  for (int q = 0; q < n; ++q) in_first[q + 1] += in_first[q];
  for (int t = m; t--;) in_list[--in_first[head[t]]] = t;

  int b = 1, c = 0;
  while (c < cords.sets) {
    for (int i = cords.first[c]; i < cords.past[c]; ++i) blocks.mark(tail[cords.elems[i]]);
    blocks.split();
    ++c;
    while (b < blocks.sets) {
      for (int i = blocks.first[b]; i < blocks.past[b]; ++i)
        for (int j = in_first[blocks.elems[i]]; j < in_first[blocks.elems[i] + 1]; ++j)
          cords.mark(in_list[j]);
      cords.split();
      ++b;
    }
  }

  const int k = blocks.sets;
  std::vector<std::vector<Arc>> arcs(k);
  std::vector<char> fin(k, 0);
  for (int q = 0; q < n; ++q)
    if (dfa.is_final(q)) fin[blocks.set_of[q]] = 1;
  for (int t = 0; t < m; ++t) {
    int q = tail[t];
    int blk = blocks.set_of[q];
    if (blocks.loc[q] == blocks.first[blk])
      arcs[blk].push_back({label_in(label[t]), label_out(label[t]),
                           static_cast<StateId>(blocks.set_of[head[t]])});
  }
  return Fsm(dfa.alphabet(), static_cast<StateId>(blocks.set_of[dfa.start()]), std::move(arcs),
             std::move(fin));
}

}  // namespace detail

/// Minimal deterministic machine over pair labels. For transducers this is
/// the canonical encoded-label minimization, not sequential-transducer
/// minimization.
inline Fsm minimize(const Fsm& m) {
  Fsm d = determinize(m);
  if (d.num_states() <= 1) return d;
  return normalize(detail::minimize_dfa(d));
}

// Boolean operations; recognizers only.

inline Fsm intersect(const Fsm& a0, const Fsm& b0) {
  detail::require_same_alphabet(a0, b0, "intersection");
  detail::require_recognizer(a0, "intersection");
  detail::require_recognizer(b0, "intersection");
  const Fsm a = a0.has_epsilon_pairs() ? normalize(a0) : a0;
  const Fsm b = b0.has_epsilon_pairs() ? normalize(b0) : b0;
  std::vector<std::vector<Arc>> bidx(b.num_states());
  for (StateId q = 0; q < b.num_states(); ++q) {
    bidx[q].assign(b.arcs(q).begin(), b.arcs(q).end());
    std::sort(bidx[q].begin(), bidx[q].end());
  }
  std::unordered_map<std::uint64_t, StateId> ids;
  std::vector<std::pair<StateId, StateId>> states{{a.start(), b.start()}};
  ids.emplace((std::uint64_t{a.start()} << 32) | b.start(), 0);
  std::vector<std::vector<Arc>> arcs;
  std::vector<char> fin;
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [p, q] = states[i];
    std::vector<Arc> row;
    for (const Arc& x : a.arcs(p)) {
      auto lo = std::lower_bound(bidx[q].begin(), bidx[q].end(), Arc{x.in, x.out, 0});
      for (auto it = lo; it != bidx[q].end() && it->in == x.in; ++it) {
        std::uint64_t key = (std::uint64_t{x.to} << 32) | it->to;
        auto [pos, inserted] = ids.emplace(key, static_cast<StateId>(states.size()));
        if (inserted) states.emplace_back(x.to, it->to);
        row.push_back({x.in, x.out, pos->second});
      }
    }
    arcs.push_back(std::move(row));
    fin.push_back(a.is_final(p) && b.is_final(q));
  }
  return normalize(Fsm(a.alphabet(), 0, std::move(arcs), std::move(fin)));
}

/// Sigma* minus L(a), over the closed alphabet.
inline Fsm complement(const Fsm& a) {
  detail::require_recognizer(a, "complement");
  const Fsm d = determinize(a);
  const auto syms = a.alphabet()->symbols();
  const StateId sink = static_cast<StateId>(d.num_states());
  std::vector<std::vector<Arc>> arcs(d.num_states() + 1);
  std::vector<char> fin(d.num_states() + 1, 0);
  for (StateId s = 0; s <= sink; ++s) {
    std::vector<char> seen(syms.size() + 1, 0);
    if (s < sink) {
      for (const Arc& x : d.arcs(s)) {
        seen[x.in] = 1;
        arcs[s].push_back(x);
      }
      fin[s] = !d.is_final(s);
    } else {
      fin[s] = 1;
    }
    for (Sym x : syms)
      if (!seen[x]) arcs[s].push_back({x, x, sink});
  }
  // An empty input machine has a non-final start with no arcs: covered above.
  return normalize(Fsm(a.alphabet(), d.start(), std::move(arcs), std::move(fin)));
}

inline Fsm difference(const Fsm& a, const Fsm& b) {
  detail::require_same_alphabet(a, b, "difference");
  detail::require_recognizer(a, "difference");
  detail::require_recognizer(b, "difference");
  return intersect(a, complement(b));
}

/// `$ E`: strings containing a substring in L(a).
inline Fsm containment(const Fsm& a) {
  detail::require_recognizer(a, "containment");
  const Fsm all = sigma_star(a.alphabet());
  return concat(concat(all, a), all);
}

// Relations.

/// Identity transduction of a recognizer; recognizers already are one.
inline Fsm identity(const Fsm& a) {
  detail::require_recognizer(a, "identity");
  return a;
}

inline Fsm inverse(const Fsm& t) {
  std::vector<std::vector<Arc>> arcs = t.arc_table();
  for (auto& row : arcs)
    for (Arc& a : row) std::swap(a.in, a.out);
  return normalize(Fsm(t.alphabet(), t.start(), std::move(arcs), t.final_table()));
}

namespace detail {
template <bool kInput>
Fsm project(const Fsm& t) {
  std::vector<std::vector<Arc>> arcs = t.arc_table();
  for (auto& row : arcs)
    for (Arc& a : row) {
      if constexpr (kInput)
        a.out = a.in;
      else
        a.in = a.out;
    }
  return normalize(Fsm(t.alphabet(), t.start(), std::move(arcs), t.final_table()));
}
}  // namespace detail

inline Fsm domain(const Fsm& t) { return detail::project<true>(t); }
inline Fsm range(const Fsm& t) { return detail::project<false>(t); }

/// `A x B` for recognizers: every string of A paired with every string of B.
inline Fsm cross_product(const Fsm& a, const Fsm& b) {
  detail::require_same_alphabet(a, b, "cross product");
  detail::require_recognizer(a, "cross product");
  detail::require_recognizer(b, "cross product");
  auto relabel = [](const Fsm& m, bool keep_input) {
    std::vector<std::vector<Arc>> arcs = m.arc_table();
    for (auto& row : arcs)
      for (Arc& x : row) {
        if (keep_input)
          x.out = kEpsilon;
        else
          x.in = kEpsilon;
      }
    return Fsm(m.alphabet(), m.start(), std::move(arcs), m.final_table());
  };
  return concat(relabel(a, true), relabel(b, false));
}

/// Relational composition: pairs (u, w) with (u, v) in a and (v, w) in b.
///
/// Uses a two-state sequencing filter: between two synchronised moves, all
/// moves of `a` alone (output epsilon) precede all moves of `b` alone (input
/// epsilon). Every pair is kept, and redundant interleavings are cut.
inline Fsm compose(const Fsm& a0, const Fsm& b0) {
  detail::require_same_alphabet(a0, b0, "composition");
  const Fsm a = a0.has_epsilon_pairs() ? normalize(a0) : a0;
  const Fsm b = b0.has_epsilon_pairs() ? normalize(b0) : b0;
  std::vector<std::vector<Arc>> bidx(b.num_states());
  for (StateId q = 0; q < b.num_states(); ++q) {
    bidx[q].assign(b.arcs(q).begin(), b.arcs(q).end());
    std::sort(bidx[q].begin(), bidx[q].end());
  }
  const std::uint64_t nb = b.num_states();
  auto key = [nb](StateId p, StateId q, int f) {
    return ((std::uint64_t{p} * nb + q) << 1) | static_cast<std::uint64_t>(f);
  };
  struct Triple {
    StateId p, q;
    int f;
  };
  std::unordered_map<std::uint64_t, StateId> ids;
  std::vector<Triple> states{{a.start(), b.start(), 0}};
  ids.emplace(key(a.start(), b.start(), 0), 0);
  std::vector<std::vector<Arc>> arcs;
  std::vector<char> fin;
  auto target = [&](StateId p, StateId q, int f) {
    auto [it, inserted] = ids.emplace(key(p, q, f), static_cast<StateId>(states.size()));
    if (inserted) states.push_back({p, q, f});
    return it->second;
  };
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Triple cur = states[i];
    std::vector<Arc> row;
    for (const Arc& x : a.arcs(cur.p)) {
      if (x.out == kEpsilon) {
        if (cur.f == 0) row.push_back({x.in, kEpsilon, target(x.to, cur.q, 0)});
        continue;
      }
      const auto& bq = bidx[cur.q];
      auto lo = std::lower_bound(bq.begin(), bq.end(), Arc{x.out, 0, 0});
      for (auto it = lo; it != bq.end() && it->in == x.out; ++it)
        row.push_back({x.in, it->out, target(x.to, it->to, 0)});
    }
    {
      const auto& bq = bidx[cur.q];
      for (auto it = bq.begin(); it != bq.end() && it->in == kEpsilon; ++it)
        row.push_back({kEpsilon, it->out, target(cur.p, it->to, 1)});
    }
    arcs.push_back(std::move(row));
    fin.push_back(a.is_final(cur.p) && b.is_final(cur.q));
  }
  return normalize(Fsm(a.alphabet(), 0, std::move(arcs), std::move(fin)));
}

/// True when L(m) is empty.
inline bool is_empty(const Fsm& m) {
  const Fsm n = normalize(m);
  return n.num_states() == 1 && !n.is_final(0) && n.arcs(0).empty();
}

/// Language equivalence of two recognizers.
inline bool equivalent(const Fsm& a, const Fsm& b) {
  return is_empty(difference(a, b)) && is_empty(difference(b, a));
}

}  // namespace otfst
