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

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace otfst {

/// Interned symbol id. 0 is reserved for epsilon.
using Sym = std::uint16_t;
inline constexpr Sym kEpsilon = 0;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closed, ordered symbol inventory. `?` denotes exactly this set.
///
/// Symbols are atomic tokens; a multi-character name such as `O[` is one
/// symbol. Ids run from 1 to size() in declaration order.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw Error("alphabet must not be empty");
    if (names_.size() >= 0xFFFF) throw Error("alphabet too large");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const auto& n = names_[i];
      if (n.empty()) throw Error("empty symbol name in alphabet");
      if (n == "<eps>") throw Error("'<eps>' is reserved for epsilon");
      if (!index_.emplace(n, static_cast<Sym>(i + 1)).second)
        throw Error("duplicate symbol '" + n + "' in alphabet");
      max_len_ = std::max(max_len_, n.size());
    }
  }

  /// 26 lowercase letters, the five syllable brackets, the violation marker
  /// `@`, and the tags `0` and `1`.
  static std::shared_ptr<const Alphabet> standard() {
    static const std::shared_ptr<const Alphabet> kStd = [] {
      std::vector<std::string> n;
      for (char c = 'a'; c <= 'z'; ++c) n.emplace_back(1, c);
      for (const char* b : {"O[", "N[", "D[", "X[", "]", "@", "0", "1"}) n.emplace_back(b);
      return std::make_shared<const Alphabet>(std::move(n));
    }();
    return kStd;
  }

  std::size_t size() const { return names_.size(); }

  std::optional<Sym> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Sym id(std::string_view name) const {
    if (auto s = find(name)) return *s;
    throw Error("unknown symbol '" + std::string(name) + "'");
  }

  const std::string& name(Sym s) const {
    static const std::string kEps = "<eps>";
    if (s == kEpsilon) return kEps;
    return names_.at(s - 1);
  }

  const std::vector<std::string>& names() const { return names_; }

  /// All symbol ids, in order.
  std::vector<Sym> symbols() const {
    std::vector<Sym> out(names_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<Sym>(i + 1);
    return out;
  }

  /// Splits `text` into symbols by greedy longest match.
  std::vector<Sym> tokenize(std::string_view text) const {
    std::vector<Sym> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t len = std::min(max_len_, text.size() - pos);
      for (; len > 0; --len) {
        if (auto s = find(text.substr(pos, len))) {
          out.push_back(*s);
          break;
        }
      }
      if (len == 0)
        throw Error("unknown symbol at offset " + std::to_string(pos) + " in '" +
                    std::string(text) + "'");
      pos += len;
    }
    return out;
  }

  std::string render(std::span<const Sym> word) const {
    std::string out;
    for (Sym s : word)
      if (s != kEpsilon) out += name(s);
    return out;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, Sym, std::less<>> index_;
  std::size_t max_len_ = 0;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

inline bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace otfst
