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

// Functionality test for finite transducers by squaring with output delays.
// The transducer is first made real-time (every transition reads exactly one
// input symbol, final states carry output sets). In the square, a pair of
// states that can still reach a pair of final states must be reached with a
// single, well-defined delay; a divergence, a second delay, or a non-zero
// residue at acceptance proves that some input has two outputs.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "otfst/apply.hpp"

namespace otfst {

struct FunctionalResult {
  bool functional = true;
  std::optional<Word> witness;  // shortest input with two outputs
  std::vector<Word> outputs;    // two distinct outputs for the witness
  bool infinite = false;        // an input has infinitely many outputs

  explicit operator bool() const { return functional; }
};

namespace detail {

struct RtArc {
  Sym in;
  Word out;
  StateId to;
  bool operator<(const RtArc& o) const {
    return std::tie(in, to, out) < std::tie(o.in, o.to, o.out);
  }
  bool operator==(const RtArc& o) const = default;
};

struct RealTime {
  std::vector<std::vector<RtArc>> arcs;    // sorted by input symbol
  std::vector<std::vector<Word>> finals;  // output emitted when stopping here
};

/// Finds a cycle of input-epsilon arcs; returns a state on it.
inline std::optional<StateId> epsilon_input_cycle(const Fsm& m) {
  const StateId n = static_cast<StateId>(m.num_states());
  std::vector<char> color(n, 0);
  for (StateId root = 0; root < n; ++root) {
    if (color[root]) continue;
    std::vector<std::pair<StateId, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [s, i] = stack.back();
      auto arcs = m.arcs(s);
      if (i == arcs.size()) {
        color[s] = 2;
        stack.pop_back();
        continue;
      }
      const Arc& a = arcs[i++];
      if (a.in != kEpsilon) continue;
      if (color[a.to] == 1) return a.to;
      if (color[a.to] == 0) {
        color[a.to] = 1;
        stack.push_back({a.to, 0});
      }
    }
  }
  return std::nullopt;
}

/// Requires a machine without input-epsilon cycles.
inline RealTime make_real_time(const Fsm& m) {
  const StateId n = static_cast<StateId>(m.num_states());
  RealTime rt;
  rt.arcs.resize(n);
  rt.finals.resize(n);
  for (StateId p = 0; p < n; ++p) {
    std::set<std::pair<StateId, Word>> closure;
    std::vector<std::pair<StateId, Word>> stack{{p, {}}};
    while (!stack.empty()) {
      auto [s, w] = std::move(stack.back());
      stack.pop_back();
      if (!closure.insert({s, w}).second) continue;
      for (const Arc& a : m.arcs(s))
        if (a.in == kEpsilon) {
          Word w2 = w;
          w2.push_back(a.out);
          stack.push_back({a.to, std::move(w2)});
        }
    }
    std::set<RtArc> arcs;
    std::set<Word> fins;
    for (const auto& [s, w] : closure) {
      if (m.is_final(s)) fins.insert(w);
      for (const Arc& a : m.arcs(s)) {
        if (a.in == kEpsilon) continue;
        Word w2 = w;
        if (a.out != kEpsilon) w2.push_back(a.out);
        arcs.insert({a.in, std::move(w2), a.to});
      }
    }
    rt.arcs[p].assign(arcs.begin(), arcs.end());
    rt.finals[p].assign(fins.begin(), fins.end());
  }
  return rt;
}

/// Output of the first path minus output of the second path, once the
/// common prefix is cancelled. `ahead` is 0 when both agree, 1 when the
/// first path is ahead by `rest`, 2 when the second is.
struct Delay {
  int ahead = 0;
  Word rest;
  bool diverged = false;
  bool operator==(const Delay&) const = default;
  bool operator<(const Delay& o) const {
    return std::tie(diverged, ahead, rest) < std::tie(o.diverged, o.ahead, o.rest);
  }
};

inline Delay extend(const Delay& d, const Word& o1, const Word& o2) {
  if (d.diverged) return d;
  Word a = d.ahead == 1 ? d.rest : Word{};
  Word b = d.ahead == 2 ? d.rest : Word{};
  a.insert(a.end(), o1.begin(), o1.end());
  b.insert(b.end(), o2.begin(), o2.end());
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  Delay out;
  if (k < a.size() && k < b.size()) {
    out.diverged = true;
    return out;
  }
  if (k < a.size()) {
    out.ahead = 1;
    out.rest.assign(a.begin() + static_cast<std::ptrdiff_t>(k), a.end());
  } else if (k < b.size()) {
    out.ahead = 2;
    out.rest.assign(b.begin() + static_cast<std::ptrdiff_t>(k), b.end());
  }
  return out;
}

/// True when stopping at (p, q) under delay `d` yields two different outputs.
inline bool final_conflict(const RealTime& rt, StateId p, StateId q, const Delay& d) {
  for (const Word& f1 : rt.finals[p])
    for (const Word& f2 : rt.finals[q]) {
      Delay e = extend(d, f1, f2);
      if (e.diverged || e.ahead != 0) return true;
    }
  return false;
}

struct SquareGraph {
  std::vector<std::pair<StateId, StateId>> pairs;
  std::map<std::pair<StateId, StateId>, StateId> index;
  // edges[i]: (input, arc index in p, arc index in q, target pair)
  std::vector<std::vector<std::tuple<Sym, std::uint32_t, std::uint32_t, StateId>>> edges;
  std::vector<char> coaccessible;
};

inline SquareGraph build_square(const RealTime& rt, StateId start) {
  SquareGraph g;
  auto intern = [&](StateId p, StateId q) {
    auto [it, inserted] = g.index.emplace(std::make_pair(p, q), static_cast<StateId>(g.pairs.size()));
    if (inserted) {
      g.pairs.push_back({p, q});
      g.edges.emplace_back();
    }
    return it->second;
  };
  intern(start, start);
  for (std::size_t i = 0; i < g.pairs.size(); ++i) {
    auto [p, q] = g.pairs[i];
    const auto& ap = rt.arcs[p];
    const auto& aq = rt.arcs[q];
    std::size_t j = 0, k = 0;
    while (j < ap.size() && k < aq.size()) {
      if (ap[j].in < aq[k].in) {
        ++j;
      } else if (aq[k].in < ap[j].in) {
        ++k;
      } else {
        const Sym a = ap[j].in;
        std::size_t j2 = j, k2 = k;
        while (j2 < ap.size() && ap[j2].in == a) ++j2;
        while (k2 < aq.size() && aq[k2].in == a) ++k2;
        for (std::size_t x = j; x < j2; ++x)
          for (std::size_t y = k; y < k2; ++y) {
            StateId t = intern(ap[x].to, aq[y].to);
            g.edges[i].emplace_back(a, static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y), t);
          }
        j = j2;
        k = k2;
      }
    }
  }
  const std::size_t n = g.pairs.size();
  std::vector<std::vector<StateId>> rev(n);
  for (StateId i = 0; i < n; ++i)
    for (const auto& e : g.edges[i]) rev[std::get<3>(e)].push_back(i);
  g.coaccessible.assign(n, 0);
  std::vector<StateId> stack;
  for (StateId i = 0; i < n; ++i)
    if (!rt.finals[g.pairs[i].first].empty() && !rt.finals[g.pairs[i].second].empty()) {
      g.coaccessible[i] = 1;
      stack.push_back(i);
    }
  while (!stack.empty()) {
    StateId t = stack.back();
    stack.pop_back();
    for (StateId s : rev[t])
      if (!g.coaccessible[s]) {
        g.coaccessible[s] = 1;
        stack.push_back(s);
      }
  }
  return g;
}

/// Breadth-first search over (pair, delay) configurations for the shortest
/// input with a final conflict. Gives up after `cap` configurations.
inline std::optional<Word> shortest_conflict(const RealTime& rt, const SquareGraph& g, std::size_t cap) {
  struct Node {
    StateId pair;
    Delay delay;
    std::size_t parent;
    Sym sym;
  };
  std::vector<Node> nodes;
  std::map<std::pair<StateId, Delay>, std::size_t> seen;
  auto reconstruct = [&](std::size_t i) {
    Word w;
    while (i != 0) {
      w.push_back(nodes[i].sym);
      i = nodes[i].parent;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };
  if (!g.coaccessible[0]) return std::nullopt;
  nodes.push_back({0, Delay{}, 0, kEpsilon});
  seen.emplace(std::make_pair(StateId{0}, Delay{}), 0);
  for (std::size_t i = 0; i < nodes.size() && nodes.size() < cap; ++i) {
    const StateId pi = nodes[i].pair;
    const Delay d = nodes[i].delay;
    auto [p, q] = g.pairs[pi];
    if (final_conflict(rt, p, q, d)) return reconstruct(i);
    for (const auto& [a, x, y, t] : g.edges[pi]) {
      if (!g.coaccessible[t]) continue;
      Delay e = extend(d, rt.arcs[p][x].out, rt.arcs[q][y].out);
      auto key = std::make_pair(t, e);
      if (seen.count(key)) continue;
      seen.emplace(key, nodes.size());
      nodes.push_back({t, std::move(e), i, a});
    }
  }
  return std::nullopt;
}

/// Shortest input whose accepting path can pass through `cycle_state`.
inline Word input_through(const Fsm& m, StateId cycle_state) {
  const StateId n = static_cast<StateId>(m.num_states());
  constexpr std::size_t kInf = static_cast<std::size_t>(-1);
  // 0-1 BFS forward from start, remembering one predecessor arc.
  std::vector<std::size_t> dist(n, kInf);
  std::vector<std::pair<StateId, Sym>> pred(n, {0, kEpsilon});
  std::deque<StateId> dq{m.start()};
  dist[m.start()] = 0;
  while (!dq.empty()) {
    StateId s = dq.front();
    dq.pop_front();
    for (const Arc& a : m.arcs(s)) {
      std::size_t w = dist[s] + (a.in != kEpsilon);
      if (w < dist[a.to]) {
        dist[a.to] = w;
        pred[a.to] = {s, a.in};
        if (a.in == kEpsilon)
          dq.push_front(a.to);
        else
          dq.push_back(a.to);
      }
    }
  }
  Word prefix;
  for (StateId s = cycle_state; s != m.start(); s = pred[s].first)
    if (pred[s].second != kEpsilon) prefix.push_back(pred[s].second);
  std::reverse(prefix.begin(), prefix.end());
  // Shortest suffix from the cycle state to acceptance.
  std::vector<std::size_t> d2(n, kInf);
  std::vector<std::pair<StateId, Sym>> next(n, {0, kEpsilon});
  std::vector<std::vector<std::pair<StateId, Sym>>> rev(n);
  for (StateId s = 0; s < n; ++s)
    for (const Arc& a : m.arcs(s)) rev[a.to].push_back({s, a.in});
  std::deque<StateId> q2;
  for (StateId s = 0; s < n; ++s)
    if (m.is_final(s)) {
      d2[s] = 0;
      q2.push_back(s);
    }
  while (!q2.empty()) {
    StateId t = q2.front();
    q2.pop_front();
    for (auto [s, sym] : rev[t]) {
      std::size_t w = d2[t] + (sym != kEpsilon);
      if (w < d2[s]) {
        d2[s] = w;
        next[s] = {t, sym};
        if (sym == kEpsilon)
          q2.push_front(s);
        else
          q2.push_back(s);
      }
    }
  }
  for (StateId s = cycle_state; !(m.is_final(s) && d2[s] == 0);) {
    auto [t, sym] = next[s];
    if (sym != kEpsilon) prefix.push_back(sym);
    s = t;
  }
  return prefix;
}

}  // namespace detail

/// Decides whether every input has at most one output. Configurations
/// searched for a shortest witness are capped by `witness_cap`.
inline FunctionalResult is_functional(const Fsm& t0, std::size_t witness_cap = 2'000'000) {
  const Fsm t = normalize(t0);
  FunctionalResult res;
  if (t.num_arcs() == 0) return res;

  if (auto c = detail::epsilon_input_cycle(t)) {
    res.functional = false;
    res.infinite = true;
    res.witness = detail::input_through(t, *c);
    return res;
  }

  const detail::RealTime rt = detail::make_real_time(t);
  const detail::SquareGraph g = detail::build_square(rt, t.start());
  const std::size_t n = g.pairs.size();

  std::vector<std::optional<detail::Delay>> delay(n);
  std::deque<StateId> queue;
  bool conflict = false;
  if (g.coaccessible[0]) {
    delay[0] = detail::Delay{};
    queue.push_back(0);
  }
  while (!queue.empty() && !conflict) {
    StateId i = queue.front();
    queue.pop_front();
    auto [p, q] = g.pairs[i];
    const detail::Delay& d = *delay[i];
    if (detail::final_conflict(rt, p, q, d)) {
      conflict = true;
      break;
    }
    for (const auto& [a, x, y, tgt] : g.edges[i]) {
      if (!g.coaccessible[tgt]) continue;
      detail::Delay e = detail::extend(d, rt.arcs[p][x].out, rt.arcs[q][y].out);
      if (e.diverged) {
        conflict = true;
        break;
      }
      if (!delay[tgt]) {
        delay[tgt] = std::move(e);
        queue.push_back(tgt);
      } else if (!(*delay[tgt] == e)) {
        conflict = true;
        break;
      }
    }
  }
  if (!conflict) return res;

  res.functional = false;
  res.witness = detail::shortest_conflict(rt, g, witness_cap);
  if (res.witness) {
    std::set<Word> outs = apply_symbols(t, *res.witness);
    auto it = outs.begin();
    for (int k = 0; k < 2 && it != outs.end(); ++k, ++it) res.outputs.push_back(*it);
  }
  return res;
}

}  // namespace otfst
