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

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "otfst/grammar.hpp"

namespace otfst {

/// `{(?-@) x [], @}*`: keeps only the markers.
inline Fsm marker_projector(const AlphabetPtr& sigma) {
  const Fsm at = symbol(sigma, marker_symbol(sigma));
  const Fsm drop = cross_product(difference(any_symbol(sigma), at), empty_string(sigma));
  return minimize(star(union_(drop, at)));
}

/// `T o mark o {(?-@) x [], @}*`; functional exactly when `t` never keeps
/// two candidates with different violation counts for one input.
inline Fsm exactness_machine(const Fsm& t, const Fsm& marker) {
  return minimize(compose(compose(t, marker), marker_projector(t.alphabet())));
}

inline FunctionalResult check_exact(const Fsm& t, const Fsm& marker) {
  return is_functional(exactness_machine(t, marker));
}

inline bool is_exact(const Fsm& t, const Fsm& marker) { return check_exact(t, marker).functional; }

/// Restricts `t` to inputs of length at most `n`.
inline Fsm restrict_length(const Fsm& t, unsigned n) {
  return minimize(compose(identity(up_to_length(t.alphabet(), n)), t));
}

inline bool exact_up_to(const Fsm& t, const Fsm& marker, unsigned n) {
  return is_exact(restrict_length(t, n), marker);
}

struct Verdict {
  std::string constraint;
  bool exact = false;
  std::optional<unsigned> bound;  // set when only inputs up to this length were checked
  std::optional<std::string> witness;
  std::vector<std::string> outputs;  // the witness's two mark strings
};

struct ExactnessReport {
  std::string grammar;
  std::size_t states = 0;
  std::vector<Verdict> verdicts;

  bool all_exact() const {
    for (const auto& v : verdicts)
      if (!v.exact) return false;
    return true;
  }

  std::string text() const {
    std::ostringstream os;
    os << "grammar " << grammar << ": " << states << " states\n";
    for (const auto& v : verdicts) {
      os << "  " << v.constraint << ": ";
      if (v.exact)
        os << (v.bound ? "exact up to length " + std::to_string(*v.bound) : std::string("exact"));
      else
        os << "inexact" << (v.bound ? " within length " + std::to_string(*v.bound) : std::string());
      if (v.witness) {
        os << " (witness '" << *v.witness << "'";
        for (const auto& o : v.outputs) os << " -> '" << o << "'";
        os << ")";
      }
      os << "\n";
    }
    return os.str();
  }

  /// One `key=value` record per constraint.
  std::string kv() const {
    std::ostringstream os;
    for (const auto& v : verdicts) {
      os << "grammar=" << grammar << " constraint=" << v.constraint
         << " verdict=" << (v.exact ? (v.bound ? "exact_up_to" : "exact") : "inexact");
      if (v.bound) os << " bound=" << *v.bound;
      os << " states=" << states;
      if (v.witness) {
        os << " witness=" << (v.witness->empty() ? "\"\"" : *v.witness);
        for (std::size_t i = 0; i < v.outputs.size(); ++i)
          os << " output" << i + 1 << "=" << (v.outputs[i].empty() ? "\"\"" : v.outputs[i]);
      }
      os << "\n";
    }
    return os.str();
  }
};

/// Checks a compiled grammar against each constraint of `plan`; with
/// `bound`, only inputs up to that length are considered.
inline ExactnessReport check_grammar(GrammarCompiler& c, const Fsm& t, const std::vector<Step>& plan,
                                     std::optional<unsigned> bound = std::nullopt) {
  ExactnessReport r;
  r.grammar = c.grammar().name;
  r.states = t.num_states();
  const Fsm checked = bound ? restrict_length(t, *bound) : t;
  const AlphabetPtr& sigma = c.sigma();
  for (const Step& s : plan) {
    Verdict v;
    v.constraint = s.name;
    v.bound = bound;
    FunctionalResult f = check_exact(checked, c.marker(s.name));
    v.exact = f.functional;
    if (f.witness) v.witness = sigma->render(*f.witness);
    for (const Word& w : f.outputs) v.outputs.push_back(sigma->render(w));
    r.verdicts.push_back(std::move(v));
  }
  return r;
}

struct PrecisionSearch {
  std::vector<Step> plan;  // with the precisions found
  Fsm machine;             // compiled through the last constraint
};

/// Greedy search: for each constraint in rank order, the least precision
/// at which the compilation so far is exact for that constraint (for
/// inputs up to `target_len` when given). Earlier precisions are frozen.
///
/// With a length bound, Gen is restricted to short inputs first; every
/// operation works input by input, so the verdicts are the same.
inline PrecisionSearch find_precisions(GrammarCompiler& c, std::vector<Step> plan,
                                       std::optional<unsigned> target_len, unsigned max_prec = 16) {
  Fsm cands = target_len ? restrict_length(c.gen(), *target_len) : c.gen();
  for (Step& s : plan) {
    bool found = false;
    for (unsigned p = 0; p <= max_prec && !found; ++p) {
      s.precision = p;
      Fsm next = c.apply_step(cands, s);
      if (is_exact(next, c.marker(s.name))) {
        cands = std::move(next);
        found = true;
      }
    }
    if (!found) {
      std::string done;
      for (const Step& d : plan) {
        if (&d == &s) break;
        done += " " + d.name + "=" + std::to_string(d.precision);
      }
      throw Error("no exact precision <= max_prec (" + std::to_string(max_prec) + ") for '" + s.name +
                  "'; precisions found so far:" + (done.empty() ? std::string(" none") : done));
    }
  }
  return {std::move(plan), std::move(cands)};
}

}  // namespace otfst
