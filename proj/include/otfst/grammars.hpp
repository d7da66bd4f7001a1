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

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "otfst/grammar.hpp"

namespace otfst::grammars {

/// Prince & Smolensky syllabification: Gen and the five constraints.
/// `intro_each_pos` is a builtin with the same definition as the macro
/// usually written for it.
inline constexpr std::string_view kSyllableSource = R"(
% Segment inventory.
macro(cons,  {b,c,d,f,g,h,j,k,l,m,n,p,q,r,s,t,v,w,x,y,z}).
macro(vowel, {a,e,o,u,i}).
macro(letter, {cons,vowel}).

% Constituent brackets; each is a single symbol.
macro(o_br, 'O[').
macro(n_br, 'N[').
macro(d_br, 'D[').
macro(x_br, 'X[').
macro(r_br, ']').
macro(bracket, {o_br,n_br,d_br,x_br,r_br}).

macro(onset,    [o_br,cons^,r_br]).
macro(nucleus,  [n_br,vowel^,r_br]).
macro(coda,     [d_br,cons^,r_br]).
macro(unparsed, [x_br,letter,r_br]).

macro(gen, {cons,vowel}* o overparse o parse o syllable_structure).

macro(parse, replace([[] x {o_br,d_br,x_br},cons,[] x r_br])
               o
             replace([[] x {n_br,x_br},vowel,[] x r_br])).

macro(overparse, intro_each_pos([{o_br,d_br,n_br},r_br]^)).

macro(syllable_structure, ignore([onset^,nucleus,coda^],unparsed)*).

% Violation markers.
macro(mark_violation(parse),    replace(([] x @),x_br,[])).
macro(mark_violation(no_coda),  replace(([] x @),d_br,[])).
macro(mark_violation(fill_nuc), replace(([] x @),[n_br,r_br],[])).
macro(mark_violation(fill_ons), replace(([] x @),[o_br,r_br],[])).
macro(mark_violation(have_ons), replace(([] x @),[],n_br)
                                  o
                                replace((@ x []),onset,[])).

gen = gen;
erasable = bracket;
)";

/// The nine rankings of the syllabification constraints.
inline constexpr std::array<std::string_view, 9> kOrderings = {
    "have_ons >> fill_ons >> no_coda >> fill_nuc >> parse",
    "have_ons >> no_coda >> fill_nuc >> parse >> fill_ons",
    "no_coda >> fill_nuc >> parse >> fill_ons >> have_ons",
    "have_ons >> fill_ons >> no_coda >> parse >> fill_nuc",
    "have_ons >> no_coda >> parse >> fill_nuc >> fill_ons",
    "no_coda >> parse >> fill_nuc >> fill_ons >> have_ons",
    "have_ons >> fill_ons >> parse >> fill_nuc >> no_coda",
    "have_ons >> parse >> fill_ons >> fill_nuc >> no_coda",
    "parse >> fill_ons >> have_ons >> fill_nuc >> no_coda",
};

/// Syllabification under an arbitrary ranking of the five constraints.
inline Grammar syllabification(std::string_view ranking, std::string name = "ps-syll") {
  std::string text(kSyllableSource);
  text += "ranking = ";
  text += ranking;
  text += ";\n";
  return grammar_from_source(text, std::move(name));
}

/// Ordering `id` (1-based) of the nine.
inline Grammar ps_syll(int id) {
  if (id < 1 || id > static_cast<int>(kOrderings.size()))
    throw Error("ps-syll ordering must be between 1 and 9, got " + std::to_string(id));
  return syllabification(kOrderings[static_cast<std::size_t>(id - 1)], "ps-syll:" + std::to_string(id));
}

/// Gen swaps a's and b's or leaves them alone; the constraint penalises a.
inline constexpr std::string_view kHillerSource = R"(
gen = {[(a x b)*,(b x a)*],[(a x a)*,(b x b)*]};
macro(mark_violation('A'), replace(([] x @),a,[])).
ranking = 'A';
)";

/// The same relation with the input recorded: input symbols are followed by
/// 0, output symbols by 1, and only output symbols are ignored by matching.
inline constexpr std::string_view kHillerMarkupSource = R"(
gen = {[(a x [a,0,b,1])*,(b x [b,0,a,1])*],
       [(a x [a,0,a,1])*,(b x [b,0,b,1])*]};
erasable = [{a,b},1];
macro(mark_violation('A'), replace(([] x @),[a,1],[])).
ranking = 'A';
)";

/// One `a` before the b/c string, or two after it; `a` is penalised.
inline constexpr std::string_view kLocalitySource = R"(
gen = {[([] x a),{b,c}*],[{b,c}*,([] x [a,a])]};
erasable = a;
macro(mark_violation('A'), replace(([] x @),a,[])).
ranking = 'A';
)";

inline Grammar hiller() { return grammar_from_source(kHillerSource, "hiller"); }
inline Grammar hiller_markup() { return grammar_from_source(kHillerMarkupSource, "hiller-markup"); }
inline Grammar locality_footnote() { return grammar_from_source(kLocalitySource, "locality-footnote"); }

inline std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (int i = 1; i <= 9; ++i) out.push_back("ps-syll:" + std::to_string(i));
  out.insert(out.end(), {"hiller", "hiller-markup", "locality-footnote"});
  return out;
}

inline bool is_builtin_name(std::string_view name) {
  for (const auto& n : builtin_names())
    if (n == name) return true;
  return false;
}

inline Grammar builtin(std::string_view name) {
  if (name.rfind("ps-syll:", 0) == 0) {
    std::string_view id = name.substr(8);
    if (id.size() == 1 && id[0] >= '1' && id[0] <= '9') return ps_syll(id[0] - '0');
  }
  if (name == "hiller") return hiller();
  if (name == "hiller-markup") return hiller_markup();
  if (name == "locality-footnote") return locality_footnote();
  throw Error("unknown builtin grammar '" + std::string(name) + "'");
}

/// Input alphabet of a builtin grammar's intended inputs.
inline std::vector<std::string> input_symbols(std::string_view name) {
  if (name.rfind("ps-syll", 0) == 0)
    return {"b", "c", "d", "f", "g", "h", "j", "k", "l", "m", "n", "p", "q", "r",
            "s", "t", "v", "w", "x", "y", "z", "a", "e", "o", "u", "i"};
  if (name == "locality-footnote") return {"b", "c"};
  return {"a", "b"};
}

}  // namespace otfst::grammars
