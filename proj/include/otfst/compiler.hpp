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

#include <memory>
#include <optional>
#include <string>

#include "otfst/macros.hpp"
#include "otfst/optimality.hpp"

namespace otfst {

/// Settings shared by every node of one compilation.
struct CompileContext {
  AlphabetPtr sigma = Alphabet::standard();
  Method method = Method::counting;      // for `oo` nodes
  std::optional<Fsm> erasable;           // matching filter; brackets when unset
  std::shared_ptr<ViolationCache> cache;  // created on first matching `oo`
};

namespace detail {

class Compiler {
 public:
  explicit Compiler(CompileContext& ctx) : ctx_(ctx) {}

  Fsm run(const ExprPtr& e) {
    const AlphabetPtr& s = ctx_.sigma;
    auto arg = [&](std::size_t i) { return run(e->args.at(i)); };
    switch (e->op) {
      case Op::kEmptyString:
        return empty_string(s);
      case Op::kEmptyLang:
        return empty_language(s);
      case Op::kSymbol:
        return symbol(s, s->id(e->name));
      case Op::kAny:
        return any_symbol(s);
      case Op::kIdent:
        throw Error("unexpanded macro reference '" + e->name + "'");
      case Op::kCall:
        return builtin(e);
      case Op::kSeq: {
        Fsm m = arg(0);
        for (std::size_t i = 1; i < e->args.size(); ++i) m = concat(m, arg(i));
        return minimize(m);
      }
      case Op::kUnion: {
        Fsm m = arg(0);
        for (std::size_t i = 1; i < e->args.size(); ++i) m = union_(m, arg(i));
        return minimize(m);
      }
      case Op::kStar:
        return minimize(star(arg(0)));
      case Op::kPlus:
        return minimize(plus(arg(0)));
      case Op::kOption:
        return minimize(option(arg(0)));
      case Op::kDiff:
        return minimize(difference(arg(0), arg(1)));
      case Op::kComplement:
        return minimize(complement(arg(0)));
      case Op::kContainment:
        return minimize(containment(arg(0)));
      case Op::kIntersect:
        return minimize(intersect(arg(0), arg(1)));
      case Op::kCross: {
        Fsm a = arg(0), b = arg(1);
        if (!a.is_recognizer() || !b.is_recognizer())
          throw Error("operation undefined for relations: x");
        return minimize(cross_product(a, b));
      }
      case Op::kCompose:
        return minimize(compose(arg(0), arg(1)));
      case Op::kLenient:
        return minimize(lenient_compose(arg(0), arg(1)));
      case Op::kOptimality:
        return optimality_node(e);
      case Op::kDomain:
        return minimize(domain(arg(0)));
      case Op::kRange:
        return minimize(range(arg(0)));
      case Op::kIdentity:
        return identity(arg(0));
      case Op::kInverse:
        return minimize(inverse(arg(0)));
    }
    throw Error("unknown expression node");
  }

 private:
  Fsm builtin(const ExprPtr& e) {
    const auto n = e->args.size();
    if (e->name == "replace") {
      if (n == 1) return minimize(replace(run(e->args[0])));
      if (n == 3) return minimize(replace(run(e->args[0]), run(e->args[1]), run(e->args[2])));
      throw Error("replace expects 1 or 3 arguments");
    }
    if (e->name == "intro_each_pos") {
      if (n != 1) throw Error("intro_each_pos expects 1 argument");
      return minimize(intro_each_pos(run(e->args[0])));
    }
    if (e->name == "ignore") {
      if (n != 2) throw Error("ignore expects 2 arguments");
      return minimize(ignore(run(e->args[0]), run(e->args[1])));
    }
    throw Error("unexpanded macro call '" + e->name + "'");
  }

  Fsm optimality_node(const ExprPtr& e) {
    if (e->args.size() != 2) throw Error("optimality operator '" + e->name + "' has no expanded marker");
    Fsm cands = run(e->args[0]);
    Fsm marker = run(e->args[1]);
    const unsigned prec = e->precision < 0 ? 0u : static_cast<unsigned>(e->precision);
    if (ctx_.method != Method::counting && !ctx_.cache)
      ctx_.cache = std::make_shared<ViolationCache>(
          make_eraser(ctx_.erasable ? *ctx_.erasable : default_erasable(ctx_.sigma)));
    if (ctx_.method == Method::counting) return counting_oo(cands, marker, prec);
    return optimality(cands, marker, ctx_.method, prec, *ctx_.cache);
  }

  CompileContext& ctx_;
};

}  // namespace detail

/// Compiles a macro-free expression; every intermediate result is
/// minimized.
inline Fsm compile(const ExprPtr& e, CompileContext& ctx) { return detail::Compiler(ctx).run(e); }

inline Fsm compile(const ExprPtr& e, const AlphabetPtr& sigma = Alphabet::standard()) {
  CompileContext ctx;
  ctx.sigma = sigma;
  return compile(e, ctx);
}

/// Parses, expands against `macros` (plus the prelude) and compiles.
inline Fsm compile_text(std::string_view text, const MacroTable& macros, CompileContext& ctx) {
  MacroTable table = prelude_macros();
  table.add_all(macros.clauses());
  return compile(expand(parse_expr(text), table), ctx);
}

inline Fsm compile_text(std::string_view text, const AlphabetPtr& sigma = Alphabet::standard()) {
  CompileContext ctx;
  ctx.sigma = sigma;
  return compile_text(text, MacroTable{}, ctx);
}

}  // namespace otfst
