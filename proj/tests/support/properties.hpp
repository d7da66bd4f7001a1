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

// Randomized property suites shared by the unit tests and the acceptance
// report. Each returns an empty string on success, or a description of the
// first counterexample.

#include <string>

#include "oracles.hpp"

namespace props {

using oracle::Relation;
using otfst::Fsm;
using otfst::Word;

inline std::string show(const otfst::AlphabetPtr& s, const Word& w) { return "'" + s->render(w) + "'"; }

/// Library relation restricted to the same bounds as the oracle.
inline Relation lib_relation(const Fsm& m, unsigned max_in, unsigned max_out) {
  return oracle::bounded(otfst::enumerate_pair_words(m, max_in), max_in, max_out);
}

inline std::string algebra_laws(unsigned seed, int rounds) {
  oracle::Random rnd(seed);
  const auto sigma = oracle::small_sigma();
  constexpr unsigned L = 6;
  for (int i = 0; i < rounds; ++i) {
    const Fsm a = rnd.recognizer(sigma);
    const Fsm b = rnd.recognizer(sigma);
    const auto la = oracle::language(a, L);
    const auto lb = oracle::language(b, L);

    if (oracle::language(otfst::complement(otfst::complement(a)), L) != la)
      return "complement(complement(L)) differs from L, round " + std::to_string(i);
    if (oracle::language(otfst::difference(a, b), L) !=
        oracle::language(otfst::intersect(a, otfst::complement(b)), L))
      return "difference(A,B) differs from A & ~B, round " + std::to_string(i);
    std::set<Word> inter, uni;
    for (const Word& w : la)
      if (lb.count(w)) inter.insert(w);
    uni = la;
    uni.insert(lb.begin(), lb.end());
    if (oracle::language(otfst::intersect(a, b), L) != inter) return "intersect wrong, round " + std::to_string(i);
    if (oracle::language(otfst::union_(a, b), L) != uni) return "union wrong, round " + std::to_string(i);
    if (oracle::language(otfst::determinize(a), L) != la) return "determinize changed language";
    if (oracle::language(otfst::minimize(a), L) != la) return "minimize changed language";
    if (oracle::language(otfst::normalize(a), L) != la) return "normalize changed language";
    if (otfst::minimize(otfst::minimize(a)).num_states() != otfst::minimize(a).num_states())
      return "minimize not idempotent";

    const Fsm s = rnd.transducer(sigma, 3);
    const Fsm t = rnd.transducer(sigma, 3);
    const Fsm u = rnd.transducer(sigma, 3);
    constexpr unsigned In = 4, Out = 30;
    const Relation rs = oracle::relation(s, In, Out);
    if (lib_relation(otfst::inverse(otfst::inverse(s)), In, Out) != rs)
      return "inverse(inverse(T)) differs from T, round " + std::to_string(i);
    const Relation st = lib_relation(otfst::compose(s, t), In, Out);
    if (st != oracle::compose(rs, t, Out))
      return "compose differs from relational composition, round " + std::to_string(i);
    for (const auto& [x, y] : st)
      if (!oracle::accepts(otfst::domain(s), x)) return "domain(compose(S,T)) not within domain(S)";
    const Relation left = lib_relation(otfst::compose(otfst::compose(s, t), u), In, Out);
    const Relation right = lib_relation(otfst::compose(s, otfst::compose(t, u)), In, Out);
    if (left != right) return "composition not associative, round " + std::to_string(i);
    if (lib_relation(otfst::minimize(s), In, Out) != lib_relation(s, In, Out))
      return "transducer minimize changed relation, round " + std::to_string(i);
    for (const auto& [in, outs] : oracle::images(lib_relation(s, In, 1000))) {
      if (otfst::apply_symbols(s, in) != outs)
        return "apply disagrees with enumerate_pairs on " + show(sigma, in);
    }
  }
  return {};
}

/// mark_violation(parse) marks every X[; no output has X[ without @ next.
inline std::string replace_obligatoriness() {
  const otfst::Grammar g = otfst::grammars::ps_syll(1);
  otfst::GrammarCompiler c(g);
  const Fsm marked = otfst::range(otfst::compose(c.gen(), c.marker("parse")));
  const Fsm bad = otfst::compile_text("$['X[', ? - @]");
  if (!otfst::is_empty(otfst::intersect(marked, bad))) return "an X[ without a following @ survived";
  const Fsm counted = otfst::compile_text("$['X[', @, @]");
  if (!otfst::is_empty(otfst::intersect(marked, counted))) return "an X[ received two markers";
  const Fsm coda = otfst::range(otfst::compose(c.gen(), c.marker("no_coda")));
  if (!otfst::is_empty(otfst::intersect(coda, otfst::compile_text("$['D[', ? - @]"))))
    return "an unmarked D[ survived";
  const Fsm nuc = otfst::range(otfst::compose(c.gen(), c.marker("fill_nuc")));
  if (!otfst::is_empty(otfst::intersect(nuc, otfst::compile_text("$['N[', ']', ? - @]"))) ||
      !otfst::is_empty(otfst::intersect(nuc, otfst::compile_text("['N[', ']']"))) ||
      !otfst::is_empty(otfst::intersect(nuc, otfst::compile_text("[?*, 'N[', ']']"))))
    return "an empty nucleus was left unmarked";
  return {};
}

/// is_functional against grouping the enumerated relation by input.
inline std::string functional_vs_oracle(unsigned seed, int machines) {
  oracle::Random rnd(seed);
  const auto sigma = oracle::small_sigma();
  constexpr unsigned In = 6, Out = 60;
  int non_functional = 0;
  for (int i = 0; i < machines; ++i) {
    const Fsm t = rnd.transducer(sigma, 4, 0.25);
    const auto images = oracle::images(oracle::relation(t, In, Out));
    std::optional<std::size_t> shortest;
    for (const auto& [in, outs] : images)
      if (outs.size() > 1 && (!shortest || in.size() < *shortest)) shortest = in.size();
    const otfst::FunctionalResult r = otfst::is_functional(t);
    if (shortest && r.functional)
      return "machine " + std::to_string(i) + ": oracle finds two outputs, checker says functional";
    if (!r.functional) {
      ++non_functional;
      if (!r.witness) return "machine " + std::to_string(i) + ": no witness";
      const auto outs = otfst::apply_symbols(t, *r.witness);
      if (outs.size() < 2) return "machine " + std::to_string(i) + ": witness has a single output";
      if (shortest && r.witness->size() != *shortest)
        return "machine " + std::to_string(i) + ": witness not shortest";
      if (!shortest && r.witness->size() <= In)
        return "machine " + std::to_string(i) + ": oracle disagrees with witness";
    }
  }
  if (non_functional == 0 || non_functional == machines) return "degenerate sample";
  return {};
}

/// write_att / read_att reproduce text and behaviour.
inline std::string att_roundtrip(unsigned seed, int machines) {
  oracle::Random rnd(seed);
  const auto sigma = oracle::small_sigma();
  for (int i = 0; i < machines; ++i) {
    const Fsm t = otfst::normalize(rnd.transducer(sigma, 5));
    const std::string text = otfst::write_att(t);
    const Fsm back = otfst::read_att(text, sigma);
    if (otfst::write_att(back) != text) return "text differs after round trip, machine " + std::to_string(i);
    if (otfst::enumerate_pair_words(back, 6) != otfst::enumerate_pair_words(t, 6))
      return "relation differs after round trip, machine " + std::to_string(i);
  }
  otfst::Grammar g = otfst::grammars::ps_syll(7);
  otfst::GrammarCompiler c(g);
  otfst::PlanOptions o;
  o.method = otfst::Method::matching_global;
  o.precision["fill_nuc"] = 1;
  const Fsm m = c.compile_plan(otfst::make_plan(g, o));
  const std::string text = otfst::write_att(m);
  const Fsm back = otfst::read_att(text, m.alphabet());
  if (otfst::write_att(back) != text) return "grammar machine text differs after round trip";
  std::vector<otfst::Sym> syms{m.alphabet()->id("b"), m.alphabet()->id("a"), m.alphabet()->id("t")};
  for (const Word& w : oracle::all_words(syms, 6))
    if (otfst::apply_symbols(back, w) != otfst::apply_symbols(m, w)) return "grammar machine behaves differently";
  return {};
}

}  // namespace props
