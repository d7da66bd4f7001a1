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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "otfst/replace.hpp"

namespace otfst {

/// How an optimality operator compares candidates.
enum class Method { counting, matching_global, matching_local };

inline std::string_view method_name(Method m) {
  switch (m) {
    case Method::counting:
      return "count";
    case Method::matching_global:
      return "match";
    case Method::matching_local:
      return "matchlocal";
  }
  return "?";
}

inline Method parse_method(std::string_view s) {
  if (s == "count") return Method::counting;
  if (s == "match") return Method::matching_global;
  if (s == "matchlocal") return Method::matching_local;
  throw Error("unknown method '" + std::string(s) + "' (expected count, match or matchlocal)");
}

inline Sym marker_symbol(const AlphabetPtr& sigma) {
  auto s = sigma->find("@");
  if (!s) throw Error("alphabet has no '@' marker symbol");
  return *s;
}

/// `{Q, ~domain(Q) o R}`
inline Fsm priority_union(const Fsm& q, const Fsm& r) {
  return union_(q, compose(identity(complement(domain(q))), r));
}

/// `priority_union(S o C, S)`; a recognizer C acts as its identity.
inline Fsm lenient_compose(const Fsm& s, const Fsm& c) { return priority_union(compose(s, c), s); }

/// `{@ x [], ? - @}*`
inline Fsm marker_deleter(const AlphabetPtr& sigma) {
  const Sym at = marker_symbol(sigma);
  const Fsm del = cross_product(symbol(sigma, at), empty_string(sigma));
  const Fsm keep = difference(any_symbol(sigma), symbol(sigma, at));
  return minimize(star(union_(del, keep)));
}

/// Strings containing at least `k` markers: `[$@]^k`.
inline Fsm at_least_markers(const AlphabetPtr& sigma, unsigned k) {
  const Fsm one = concat(sigma_star(sigma), symbol(sigma, marker_symbol(sigma)));
  return minimize(concat(power(one, k), sigma_star(sigma)));
}

/// Counting operator with bounded precision:
/// `Cands o mark lc ~([$@]^(P+1)) lc ... lc ~($@) o {@ x [], ?-@}*`.
inline Fsm counting_oo(const Fsm& cands, const Fsm& marker, unsigned precision) {
  const AlphabetPtr& sigma = cands.alphabet();
  Fsm m = minimize(compose(cands, marker));
  for (unsigned k = precision + 1; k >= 1; --k)
    m = minimize(lenient_compose(m, complement(at_least_markers(sigma, k))));
  return minimize(compose(m, marker_deleter(sigma)));
}

/// Permutation flavour used by the matching filter.
enum class PermuteMode { global, local };

/// One step of marker movement.
///
/// Global: `[{[?*,(@ x []),?*,([] x @)],[?*,([] x @),?*,(@ x [])]}*,?*]`
/// moves markers across any distance. Local:
/// `{?,[([] x @),?,(@ x [])],[(@ x []),?,([] x @)]}*` moves a marker over
/// at most one symbol.
inline Fsm permute_marker(const AlphabetPtr& sigma, PermuteMode mode) {
  const Sym at = marker_symbol(sigma);
  const Fsm eps = empty_string(sigma);
  const Fsm any = any_symbol(sigma);
  const Fsm drop = cross_product(symbol(sigma, at), eps);
  const Fsm add = cross_product(eps, symbol(sigma, at));
  if (mode == PermuteMode::local) {
    const Fsm fwd = concat(concat(add, any), drop);
    const Fsm back = concat(concat(drop, any), add);
    return minimize(star(union_(union_(any, fwd), back)));
  }
  const Fsm all = sigma_star(sigma);
  const Fsm right = concat(concat(concat(all, drop), all), add);
  const Fsm left = concat(concat(concat(all, add), all), drop);
  return minimize(concat(star(union_(right, left)), all));
}

/// Transducers that remove or reinsert the symbols the matching filter
/// ignores (brackets by default).
///
/// When the erasable language consists of single symbols, deletion is
/// `{(E x []), ?-E}*` and insertion `{([] x E), ?-E}*`. For longer erasable
/// strings, deletion is the obligatory `replace(E x [])` and insertion is
/// `{([] x E), ?}*`.
struct Eraser {
  Fsm deleter;
  Fsm inserter;
};

inline Eraser make_eraser(const Fsm& erasable) {
  detail::require_recognizer(erasable, "erasable");
  const AlphabetPtr& sigma = erasable.alphabet();
  const Fsm eps = empty_string(sigma);
  const Fsm e = minimize(erasable);
  if (is_empty(e)) {
    const Fsm id = identity(sigma_star(sigma));
    return {id, id};
  }
  if (e.is_final(e.start())) throw Error("erasable language must not contain the empty string");
  const bool single = equivalent(e, intersect(e, any_symbol(sigma)));
  if (single) {
    const Fsm rest = difference(any_symbol(sigma), e);
    return {minimize(star(union_(cross_product(e, eps), rest))),
            minimize(star(union_(cross_product(eps, e), rest)))};
  }
  return {minimize(replace(cross_product(e, eps))),
          minimize(star(union_(cross_product(eps, e), any_symbol(sigma))))};
}

/// The bracket symbols `{O[,N[,D[,X[,]}` when the alphabet has them.
inline Fsm default_erasable(const AlphabetPtr& sigma) {
  std::vector<Sym> syms;
  for (const char* b : {"O[", "N[", "D[", "X[", "]"})
    if (auto s = sigma->find(b)) syms.push_back(*s);
  return symbol_set(sigma, syms);
}

/// Erase and add at least one marker: `del o [[?*,([] x @)]+,?*]`.
inline Fsm violation_head(const Eraser& er) {
  const AlphabetPtr& sigma = er.deleter.alphabet();
  const Fsm all = sigma_star(sigma);
  const Fsm add = cross_product(empty_string(sigma), symbol(sigma, marker_symbol(sigma)));
  return minimize(compose(er.deleter, concat(plus(concat(all, add)), all)));
}

/// Erase, add at least one marker, permute `precision` times, reinsert:
/// `del o [[?*,([] x @)]+,?*] o permute^P o ins`.
inline Fsm add_violation(const Eraser& er, unsigned precision, PermuteMode mode) {
  Fsm m = violation_head(er);
  const Fsm step = permute_marker(er.deleter.alphabet(), mode);
  for (unsigned i = 0; i < precision; ++i) m = minimize(compose(m, step));
  return minimize(compose(m, er.inserter));
}

/// Minimal recognizer for the image of `lang` under `t`.
inline Fsm image(const Fsm& lang, const Fsm& t) { return minimize(range(compose(identity(lang), t))); }

/// The matching filter's ingredients for one eraser. `worse(L, P, mode)`
/// is `range(identity(L) o add_violation(P, mode))`, computed one stage at
/// a time so that only small recognizers are ever determinized; the
/// composed transducer itself grows quickly with the precision.
class ViolationCache {
 public:
  explicit ViolationCache(Eraser eraser)
      : eraser_(std::move(eraser)), head_(violation_head(eraser_)) {}

  Fsm worse(const Fsm& lang, unsigned precision, PermuteMode mode) {
    Fsm cur = image(lang, head_);
    const Fsm& st = step(mode);
    for (unsigned i = 0; i < precision; ++i) cur = image(cur, st);
    return image(cur, eraser_.inserter);
  }

  /// The composed add_violation transducer, memoized per (precision, mode).
  const Fsm& get(unsigned precision, PermuteMode mode) {
    auto key = std::make_pair(precision, mode == PermuteMode::local);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, add_violation(eraser_, precision, mode)).first;
    return it->second;
  }

  const Eraser& eraser() const { return eraser_; }

 private:
  const Fsm& step(PermuteMode mode) {
    std::optional<Fsm>& slot = mode == PermuteMode::local ? local_ : global_;
    if (!slot) slot = permute_marker(eraser_.deleter.alphabet(), mode);
    return *slot;
  }

  Eraser eraser_;
  Fsm head_;
  std::optional<Fsm> local_, global_;
  std::map<std::pair<unsigned, bool>, Fsm> cache_;
};

namespace detail {

inline Fsm keep_unbeaten(const Fsm& cands, const Fsm& marked, const Fsm& worse) {
  const Fsm kept = minimize(compose(marked, identity(complement(worse))));
  return minimize(compose(kept, marker_deleter(cands.alphabet())));
}

}  // namespace detail

/// Matching operator: marked candidates minus everything reachable from a
/// marked candidate by adding violations, then markers deleted.
inline Fsm matching_oo(const Fsm& cands, const Fsm& marker, const Fsm& add_viol) {
  const Fsm marked = minimize(compose(cands, marker));
  return detail::keep_unbeaten(cands, marked, range(compose(marked, add_viol)));
}

inline Fsm matching_oo(const Fsm& cands, const Fsm& marker, unsigned precision, PermuteMode mode,
                       ViolationCache& cache) {
  const Fsm marked = minimize(compose(cands, marker));
  return detail::keep_unbeaten(cands, marked, cache.worse(minimize(range(marked)), precision, mode));
}

inline Fsm matching_oo(const Fsm& cands, const Fsm& marker, unsigned precision, PermuteMode mode,
                       const Fsm& erasable) {
  ViolationCache cache(make_eraser(erasable));
  return matching_oo(cands, marker, precision, mode, cache);
}

/// Dispatches on `method`; `cache` supplies the matching filter.
inline Fsm optimality(const Fsm& cands, const Fsm& marker, Method method, unsigned precision,
                      ViolationCache& cache) {
  switch (method) {
    case Method::counting:
      return counting_oo(cands, marker, precision);
    case Method::matching_global:
      return matching_oo(cands, marker, precision, PermuteMode::global, cache);
    case Method::matching_local:
      return matching_oo(cands, marker, precision, PermuteMode::local, cache);
  }
  throw Error("unknown method");
}

}  // namespace otfst
