// Copyright 2026 The costcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// costcert: typecheck, evaluate, translate and bound target programs.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "costcert/cplx.h"
#include "costcert/cplx_sem.h"
#include "costcert/error.h"
#include "costcert/harness.h"
#include "costcert/target_eval.h"
#include "costcert/target_syntax.h"
#include "costcert/translate.h"
#include "json.hpp"

namespace {

using namespace costcert;

enum Exit : int {
  kOk = 0,
  kVerdictFailure = 1,
  kUsage = 2,
  kBudget = 3,
  kInternal = 4,
};

struct Options {
  std::string file;
  std::uint64_t budget = target::kDefaultBudget;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::size_t depth = 4;
  std::size_t max_list = 8;
  unsigned threads = 1;
  bool json = false;
  std::vector<std::string> args;
  std::string sweep = "0..8";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Loaded {
  target::TargetExpr expr;
  target::TargetTy ty;
};

Loaded load(const std::string& path) {
  std::string text = read_file(path);
  try {
    target::TargetExpr e = target::parse_program(text);
    return {e, target::typecheck({}, e)};
  } catch (const Error& e) {
    throw Error(path + ":" + e.what());
  }
}

harness::ProbeConfig probe_config(const Options& o) {
  harness::ProbeConfig cfg;
  cfg.trials = o.trials;
  cfg.depth = o.depth;
  cfg.max_list = o.max_list;
  cfg.seed = o.seed;
  cfg.budget = o.budget;
  cfg.validate();
  return cfg;
}

int run_typecheck(const Options& o) {
  Loaded p = load(o.file);
  if (o.json) {
    std::cout << nlohmann::ordered_json{{"type", target::to_string(p.ty)}}.dump()
              << '\n';
  } else {
    std::cout << target::to_string(p.ty) << '\n';
  }
  return kOk;
}

int run_eval(const Options& o) {
  Loaded p = load(o.file);
  target::EvalResult r = target::eval(p.expr, {}, o.budget);
  if (o.json) {
    nlohmann::ordered_json j;
    j["value"] = target::to_string(r.value);
    j["cost"] = r.cost;
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "value = " << target::to_string(r.value)
              << ", cost = " << r.cost << '\n';
  }
  return kOk;
}

int run_translate(const Options& o) {
  Loaded p = load(o.file);
  cplx::CplxExpr c = translate::translate(p.expr);
  cplx::CTy ty = cplx::ctypecheck({}, c);
  if (o.json) {
    nlohmann::ordered_json j;
    j["term"] = cplx::print(c);
    j["type"] = cplx::to_string(ty);
    std::cout << j.dump() << '\n';
  } else {
    std::cout << cplx::print(c) << '\n' << "  : " << cplx::to_string(ty) << '\n';
  }
  return kOk;
}

// `(c,p)` is a fixed complexity, `n` marks the swept argument, anything
// else is a closed target term.
harness::ArgSpec parse_arg(const std::string& text) {
  static const std::regex fixed(R"(\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*)");
  std::smatch m;
  if (std::regex_match(text, m, fixed)) {
    return harness::FixedArg{std::stoull(m[1]), std::stoull(m[2])};
  }
  if (text == "n") return harness::SweepArg{};
  target::TargetExpr term = target::parse(text);
  target::typecheck({}, term);
  return harness::FunctionArg{term};
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  static const std::regex range(R"((\d+)\.\.(\d+))");
  std::smatch m;
  if (!std::regex_match(text, m, range)) {
    throw CLI::ValidationError("--sweep", "expected a..b, got " + text);
  }
  return {std::stoull(m[1]), std::stoull(m[2])};
}

int run_bound(const Options& o) {
  Loaded p = load(o.file);
  std::vector<harness::ArgSpec> specs;
  bool swept = false;
  for (const std::string& a : o.args) {
    specs.push_back(parse_arg(a));
    swept |= std::holds_alternative<harness::SweepArg>(specs.back());
  }
  if (!swept) specs.push_back(harness::SweepArg{});
  auto [first, last] = parse_range(o.sweep);
  harness::BoundTable t = harness::tabulate(p.expr, specs, first, last);
  std::cout << harness::format_table(t, o.json);
  return kOk;
}

int run_check(const Options& o) {
  Loaded p = load(o.file);
  harness::Report r = harness::check_program(p.expr, probe_config(o));
  r.program = o.file;
  std::cout << (o.json ? harness::to_json_line(r) : harness::to_record(r))
            << '\n';
  if (!o.json && !r.detail.empty()) std::cout << r.detail << '\n';
  switch (r.verdict) {
    case harness::Verdict::kPass:
      return kOk;
    case harness::Verdict::kFail:
      return kVerdictFailure;
    case harness::Verdict::kInconclusive:
      return kBudget;
  }
  return kInternal;
}

int run_fuzz(const Options& o) {
  harness::CampaignSummary s =
      harness::fuzz_campaign(probe_config(o), o.threads);
  std::cout << harness::format_campaign(s, o.json);
  return s.failed == 0 ? kOk : kVerdictFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cost bounds for a higher-order language by translation"};
  app.require_subcommand(1);
  Options o;

  auto add_budget = [&](CLI::App* c) {
    c->add_option("--budget", o.budget, "Evaluation cost budget")
        ->check(CLI::PositiveNumber);
  };
  auto add_probe = [&](CLI::App* c) {
    add_budget(c);
    c->add_option("--seed", o.seed, "Random seed");
    c->add_option("--trials", o.trials, "Programs per campaign / probes per arrow");
    c->add_option("--depth", o.depth, "Generated term depth")
        ->check(CLI::PositiveNumber);
    c->add_option("--max-list", o.max_list, "Longest generated list")
        ->check(CLI::PositiveNumber);
  };

  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> commands;
  auto file_cmd = [&](const char* name, const char* help,
                      int (*fn)(const Options&)) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("file", o.file, "Program file")->required();
    c->add_flag("--json", o.json, "JSON output");
    commands.emplace_back(c, fn);
    return c;
  };

  file_cmd("typecheck", "Print the type of a program", run_typecheck);
  add_budget(file_cmd("eval", "Evaluate a closed program and report its cost",
                      run_eval));
  file_cmd("translate", "Print the complexity translation and its type",
           run_translate);
  CLI::App* bound =
      file_cmd("bound", "Tabulate the translated bound of a curried program",
               run_bound);
  bound->add_option("--arg", o.args,
                    "Argument spec in order: (c,p), n for the swept argument, "
                    "or a closed target term");
  bound->add_option("--sweep", o.sweep, "Range a..b of the swept size");
  add_probe(file_cmd("check", "Check a program against its translated bound",
                     run_check));
  CLI::App* fuzz =
      app.add_subcommand("fuzz", "Run a random soundness campaign");
  add_probe(fuzz);
  fuzz->add_flag("--json", o.json, "JSON-lines output");
  fuzz->add_option("--threads", o.threads, "Worker threads")
      ->check(CLI::Range(1u, 256u));
  commands.emplace_back(fuzz, run_fuzz);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    for (auto& [cmd, fn] : commands) {
      if (cmd->parsed()) return fn(o);
    }
  } catch (const BudgetExhausted& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const ArithmeticOverflow& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  } catch (const EvalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
