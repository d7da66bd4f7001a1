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

// otfst: compile Optimality-Theory grammars into transducers, apply them,
// and check or search for exact precisions.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "otfst/otfst.hpp"

namespace {

using namespace otfst;

constexpr int kExitOk = 0;
constexpr int kExitInexact = 1;
constexpr int kExitError = 2;

struct Common {
  std::string method;
  std::vector<std::string> prec;
  std::string sigma;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  void report(const char* what) const {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::cerr << what << " took " << std::fixed << std::setprecision(2) << s << " s\n";
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

AlphabetPtr make_sigma(const std::string& spec) {
  if (spec.empty()) return Alphabet::standard();
  std::vector<std::string> names;
  std::stringstream ss(spec);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) names.push_back(tok);
  if (std::find(names.begin(), names.end(), "@") == names.end()) names.push_back("@");
  return std::make_shared<const Alphabet>(std::move(names));
}

PlanOptions plan_options(const Common& c) {
  PlanOptions o;
  if (!c.method.empty()) o.method = parse_method(c.method);
  for (const std::string& p : c.prec) {
    auto eq = p.find('=');
    auto to_unsigned = [&](const std::string& s) {
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(s, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != s.size() || s.empty()) throw Error("bad precision '" + p + "'");
      return static_cast<unsigned>(v);
    };
    if (eq == std::string::npos)
      o.all_precision = to_unsigned(p);
    else
      o.precision[p.substr(0, eq)] = to_unsigned(p.substr(eq + 1));
  }
  return o;
}

bool is_att_path(const std::string& ref) {
  return ref.size() > 4 && ref.compare(ref.size() - 4, 4, ".att") == 0;
}

Grammar load_grammar(const std::string& ref) {
  if (grammars::is_builtin_name(ref)) return grammars::builtin(ref);
  return load_grammar_file(ref);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

std::string plan_string(const std::vector<Step>& plan) {
  std::string s;
  for (const Step& st : plan) {
    if (!s.empty()) s += " >> ";
    s += st.name + ":" + std::string(method_name(st.method)) + ":" + std::to_string(st.precision);
  }
  return s;
}

/// A machine loaded from AT&T text or compiled from a grammar.
Fsm load_machine(const std::string& ref, const Common& c) {
  AlphabetPtr sigma = make_sigma(c.sigma);
  if (is_att_path(ref)) return read_att(read_file(ref), sigma);
  Grammar g = load_grammar(ref);
  GrammarCompiler comp(g, sigma);
  return comp.compile_plan(make_plan(g, plan_options(c)));
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--method", c.method, "count, match or matchlocal (overrides the grammar)")
      ->check(CLI::IsMember({"count", "match", "matchlocal"}));
  cmd->add_option("--prec", c.prec, "NAME=N for one constraint, or N for all; repeatable")
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->delimiter(',');
  cmd->add_option("--sigma", c.sigma, "comma-separated alphabet (default: a-z, brackets, @, 0, 1)");
}

int run_compile(const std::string& ref, const Common& c, const std::string& out, bool print_att) {
  Stopwatch sw;
  AlphabetPtr sigma = make_sigma(c.sigma);
  Grammar g = load_grammar(ref);
  GrammarCompiler comp(g, sigma);
  auto plan = make_plan(g, plan_options(c));
  Fsm m = comp.compile_plan(plan);
  if (!out.empty()) write_file(out, write_att(m));
  if (print_att)
    std::cout << write_att(m);
  else
    std::cout << "grammar " << g.name << "\nplan " << plan_string(plan) << "\nstates " << m.num_states() << "\n";
  sw.report("compile");
  return kExitOk;
}

int run_apply(const std::string& ref, const Common& c, const std::vector<std::string>& inputs) {
  Fsm m = load_machine(ref, c);
  for (const std::string& in : inputs) {
    for (const std::string& o : otfst::apply(m, in)) {
      if (inputs.size() > 1) std::cout << in << '\t';
      std::cout << o << '\n';
    }
  }
  return kExitOk;
}

int run_check(const std::string& ref, const Common& c, std::optional<unsigned> len, const std::string& format,
              bool strict) {
  Stopwatch sw;
  Grammar g = load_grammar(ref);
  GrammarCompiler comp(g, make_sigma(c.sigma));
  auto plan = make_plan(g, plan_options(c));
  Fsm m = comp.compile_plan(plan);
  ExactnessReport r = check_grammar(comp, m, plan, len);
  if (format == "kv") {
    std::cout << r.kv();
  } else {
    std::cout << "plan " << plan_string(plan) << "\n" << r.text();
    std::cout << (r.all_exact() ? "exact" : "inexact") << "\n";
  }
  sw.report("check");
  return strict && !r.all_exact() ? kExitInexact : kExitOk;
}

int run_search(const std::string& ref, const Common& c, std::optional<unsigned> len, unsigned max_prec) {
  Stopwatch sw;
  Grammar g = load_grammar(ref);
  GrammarCompiler comp(g, make_sigma(c.sigma));
  PrecisionSearch r = find_precisions(comp, make_plan(g, plan_options(c)), len, max_prec);
  std::string vec;
  for (const Step& s : r.plan) vec += (vec.empty() ? "" : ",") + std::to_string(s.precision);
  Fsm full = comp.compile_plan(r.plan);
  std::cout << "precisions " << vec << "\nplan " << plan_string(r.plan) << "\nstates " << full.num_states()
            << "\n";
  sw.report("search");
  return kExitOk;
}

int run_table(std::vector<unsigned> lens, unsigned max_prec) {
  Stopwatch sw;
  if (lens.empty()) lens = {5, 10, 15};
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"method", "exactness"};
  for (int id = 1; id <= 9; ++id) header.push_back(std::to_string(id));
  rows.push_back(header);

  auto cell = [&](int id, Method method, std::optional<unsigned> len) -> std::string {
    try {
      Grammar g = grammars::ps_syll(id);
      GrammarCompiler comp(g);
      PlanOptions o;
      o.method = method;
      PrecisionSearch r = find_precisions(comp, make_plan(g, o), len, max_prec);
      return std::to_string(comp.compile_plan(r.plan).num_states());
    } catch (const Error&) {
      return "-";
    }
  };
  std::vector<std::string> row{"matching", "exact"};
  for (int id = 1; id <= 9; ++id) row.push_back(cell(id, Method::matching_global, std::nullopt));
  rows.push_back(row);
  for (unsigned n : lens) {
    row = {"counting", "<=" + std::to_string(n)};
    for (int id = 1; id <= 9; ++id) row.push_back(cell(id, Method::counting, n));
    rows.push_back(row);
  }
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) std::cout << "  ";
      if (i < 2)
        std::cout << std::left << std::setw(static_cast<int>(width[i])) << r[i];
      else
        std::cout << std::right << std::setw(static_cast<int>(width[i])) << r[i];
    }
    std::cout << "\n";
  }
  sw.report("table");
  return kExitOk;
}

int run_enumerate(const std::string& ref, const Common& c, unsigned len) {
  Fsm m = load_machine(ref, c);
  for (const auto& [in, out] : enumerate_pairs(m, len)) std::cout << in << '\t' << out << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile and analyse Optimality-Theory grammars as finite-state transducers"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");
  app.footer("Grammars: a file path, or one of ps-syll:1..9, hiller, hiller-markup, locality-footnote.\n"
             "Machines ending in .att are read as AT&T text.");

  Common common;
  std::string ref, out, format = "text";
  std::vector<std::string> inputs;
  std::optional<unsigned> len;
  std::vector<unsigned> lens;
  unsigned max_prec = 16, enum_len = 4;
  bool strict = false, print_att = false;

  auto* compile_cmd = app.add_subcommand("compile", "Compile a grammar and report its size");
  compile_cmd->add_option("grammar", ref, "grammar reference")->required();
  compile_cmd->add_option("--out", out, "write the machine in AT&T format");
  compile_cmd->add_flag("--att", print_att, "print the machine in AT&T format instead of a summary");
  add_common(compile_cmd, common);

  auto* export_cmd = app.add_subcommand("export", "Compile a grammar and print it in AT&T format");
  export_cmd->add_option("grammar", ref, "grammar reference")->required();
  export_cmd->add_option("--out", out, "write to this file instead of stdout");
  add_common(export_cmd, common);

  auto* apply_cmd = app.add_subcommand("apply", "Print the outputs for each input, sorted");
  apply_cmd->add_option("grammar", ref, "grammar reference or .att machine")->required();
  apply_cmd->add_option("inputs", inputs, "input strings")->required();
  add_common(apply_cmd, common);

  auto* check_cmd = app.add_subcommand("check", "Report exactness for every constraint");
  check_cmd->add_option("grammar", ref, "grammar reference")->required();
  check_cmd->add_option("--len", len, "only consider inputs up to this length");
  check_cmd->add_option("--format", format, "text or kv")->check(CLI::IsMember({"text", "kv"}));
  check_cmd->add_flag("--strict", strict, "exit with status 1 when inexact");
  add_common(check_cmd, common);

  auto* search_cmd = app.add_subcommand("search", "Greedy search for the least exact precisions");
  search_cmd->add_option("grammar", ref, "grammar reference")->required();
  search_cmd->add_option("--len", len, "exactness bound on input length (default: all inputs)");
  search_cmd->add_option("--max-prec", max_prec, "largest precision tried");
  add_common(search_cmd, common);

  auto* table_cmd = app.add_subcommand("table", "State counts for the nine syllabification orderings");
  table_cmd->add_option("--len", lens, "exactness bounds for the counting rows (default 5 10 15)")
      ->delimiter(',');
  table_cmd->add_option("--max-prec", max_prec, "largest precision tried");

  auto* enum_cmd = app.add_subcommand("enumerate", "List input/output pairs up to an input length");
  enum_cmd->add_option("grammar", ref, "grammar reference or .att machine")->required();
  enum_cmd->add_option("--len", enum_len, "maximum input length");
  add_common(enum_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*compile_cmd) return run_compile(ref, common, out, print_att);
    if (*export_cmd) return out.empty() ? run_compile(ref, common, "", true) : run_compile(ref, common, out, false);
    if (*apply_cmd) return run_apply(ref, common, inputs);
    if (*check_cmd) return run_check(ref, common, len, format, strict);
    if (*search_cmd) return run_search(ref, common, len, max_prec);
    if (*table_cmd) return run_table(lens, max_prec);
    if (*enum_cmd) return run_enumerate(ref, common, enum_len);
  } catch (const SyntaxError& e) {
    std::cerr << "otfst: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "otfst: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
