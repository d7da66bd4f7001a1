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

// AT&T text format: one arc per line as `src<TAB>dst<TAB>in<TAB>out`, one
// final state per single-field line, `<eps>` for epsilon. The start state is
// the source of the first arc line (or the first final state when there are
// no arcs).

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "otfst/algebra.hpp"

namespace otfst {

/// Writes arcs grouped by state in ascending order, then final states.
/// The start state must be 0, which holds for every normalized machine.
inline std::string write_att(const Fsm& m0) {
  const Fsm m = m0.start() == 0 ? m0 : normalize(m0);
  const auto& sigma = *m.alphabet();
  std::string out;
  bool start_written = m.arcs(0).size() > 0;
  if (!start_written && m.num_states() > 1)
    throw Error("cannot export: start state has no arcs but other states exist");
  for (StateId s = 0; s < m.num_states(); ++s)
    for (const Arc& a : m.arcs(s)) {
      out += std::to_string(s);
      out += '\t';
      out += std::to_string(a.to);
      out += '\t';
      out += sigma.name(a.in);
      out += '\t';
      out += sigma.name(a.out);
      out += '\n';
    }
  for (StateId s = 0; s < m.num_states(); ++s)
    if (m.is_final(s)) out += std::to_string(s) + "\n";
  return out;
}

/// Parses AT&T text. State ids are kept as written; arcs keep file order.
inline Fsm read_att(std::string_view text, AlphabetPtr sigma) {
  struct Line {
    std::vector<std::string> fields;
    int lineno;
  };
  std::vector<Line> lines;
  {
    std::size_t pos = 0;
    int lineno = 0;
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view raw = text.substr(pos, end - pos);
      pos = end + 1;
      ++lineno;
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      if (raw.empty()) continue;
      Line l{{}, lineno};
      std::size_t p = 0;
      while (true) {
        std::size_t tab = raw.find('\t', p);
        l.fields.emplace_back(raw.substr(p, tab == std::string_view::npos ? raw.npos : tab - p));
        if (tab == std::string_view::npos) break;
        p = tab + 1;
      }
      lines.push_back(std::move(l));
    }
  }
  auto parse_state = [](const std::string& f, int lineno) {
    StateId v = 0;
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc() || ptr != f.data() + f.size())
      throw Error("AT&T line " + std::to_string(lineno) + ": bad state id '" + f + "'");
    return v;
  };
  auto parse_sym = [&](const std::string& f, int lineno) -> Sym {
    if (f == "<eps>") return kEpsilon;
    auto s = sigma->find(f);
    if (!s) throw Error("AT&T line " + std::to_string(lineno) + ": unknown symbol '" + f + "'");
    return *s;
  };

  FsmBuilder b(sigma);
  auto ensure = [&](StateId s) {
    while (b.num_states() <= s) b.add_state();
  };
  bool have_start = false;
  for (const Line& l : lines) {
    if (l.fields.size() == 4 || l.fields.size() == 3) {
      StateId src = parse_state(l.fields[0], l.lineno);
      StateId dst = parse_state(l.fields[1], l.lineno);
      Sym in = parse_sym(l.fields[2], l.lineno);
      Sym out = l.fields.size() == 4 ? parse_sym(l.fields[3], l.lineno) : in;
      ensure(std::max(src, dst));
      if (!have_start) {
        b.set_start(src);
        have_start = true;
      }
      b.add_arc(src, in, out, dst);
    } else if (l.fields.size() == 1) {
      StateId s = parse_state(l.fields[0], l.lineno);
      ensure(s);
      if (!have_start) {
        b.set_start(s);
        have_start = true;
      }
      b.set_final(s);
    } else {
      throw Error("AT&T line " + std::to_string(l.lineno) + ": expected 1, 3 or 4 fields");
    }
  }
  return std::move(b).build();
}

}  // namespace otfst
