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

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "costcert/error.h"
#include "costcert/harness.h"
#include "costcert/translate.h"

namespace costcert::harness {

using cplx::SemVal;
using target::TargetExpr;
using target::TargetTy;
using target::Value;

namespace {

// Argument types of a curried program, one per ArgSpec.
std::vector<TargetTy> curried_domains(const TargetExpr& program,
                                      std::size_t arity) {
  TargetTy ty = target::typecheck({}, program);
  std::vector<TargetTy> out;
  for (std::size_t i = 0; i < arity; ++i) {
    if (!ty.is_arrow()) {
      throw Error("program takes fewer than " + std::to_string(arity) +
                  " arguments");
    }
    out.push_back(ty.domain());
    ty = ty.codomain();
  }
  return out;
}

void require_one_sweep(std::span<const ArgSpec> args) {
  auto sweeps = std::count_if(args.begin(), args.end(), [](const ArgSpec& a) {
    return std::holds_alternative<SweepArg>(a);
  });
  if (sweeps != 1) throw Error("exactly one argument must be swept");
}

}  // namespace

BoundTable tabulate(const TargetExpr& program, std::span<const ArgSpec> args,
                    std::uint64_t first, std::uint64_t last) {
  require_one_sweep(args);
  curried_domains(program, args.size());
  SemVal fn = cplx::denote(translate::translate(program), {});
  std::vector<std::optional<SemVal>> fixed;
  for (const ArgSpec& a : args) {
    if (const auto* f = std::get_if<FixedArg>(&a)) {
      fixed.push_back(SemVal::Pair(f->cost, SemVal::Nat(f->potential)));
    } else if (const auto* t = std::get_if<FunctionArg>(&a)) {
      target::typecheck({}, t->term);
      fixed.push_back(cplx::denote(translate::translate(t->term), {}));
    } else {
      fixed.push_back(std::nullopt);
    }
  }
  BoundTable table;
  for (std::uint64_t n = first; n <= last && first <= last; ++n) {
    SemVal acc = fn;
    for (const auto& a : fixed) {
      acc = cplx::star_apply(acc, a ? *a : SemVal::Pair(1, SemVal::Nat(n)));
    }
    if (!acc.pot().is_nat()) throw Error("final potential is not a natural");
    table.rows.push_back({n, acc.cost(), acc.pot().nat()});
    if (n == last) break;
  }
  return table;
}

std::string format_table(const BoundTable& t, bool json) {
  std::ostringstream out;
  if (json) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const BoundRow& r : t.rows) {
      rows.push_back({{"n", r.n}, {"cost", r.cost}, {"pot", r.potential}});
    }
    out << rows.dump() << '\n';
    return out.str();
  }
  out << "n\tcost\tpot\n";
  for (const BoundRow& r : t.rows) {
    out << r.n << '\t' << r.cost << '\t' << r.potential << '\n';
  }
  return out.str();
}

namespace {

std::vector<Value> lists_of_length(std::uint64_t n) {
  std::vector<Value> out;
  if (n <= 8) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      std::vector<std::int64_t> xs(n);
      for (std::uint64_t i = 0; i < n; ++i) xs[i] = (bits >> i) & 1;
      out.push_back(target::make_list(xs));
    }
  }
  std::vector<std::int64_t> up(n);
  std::iota(up.begin(), up.end(), 1);
  out.push_back(target::make_list(up));
  std::vector<std::int64_t> down(up.rbegin(), up.rend());
  out.push_back(target::make_list(down));
  return out;
}

// Concrete values of type `ty` whose size is `size`.
std::vector<Value> candidates(const TargetTy& ty, std::uint64_t size,
                              std::uint64_t n) {
  switch (ty.kind()) {
    case TargetTy::Kind::kInt: {
      std::vector<Value> out;
      for (std::int64_t k : {std::int64_t{0}, std::int64_t{1}, std::int64_t{2},
                             static_cast<std::int64_t>(n) + 1}) {
        out.push_back(target::make_int(k));
      }
      return out;
    }
    case TargetTy::Kind::kBool:
      return {target::make_bool(false), target::make_bool(true)};
    case TargetTy::Kind::kIntList:
      return lists_of_length(size);
    case TargetTy::Kind::kArrow:
      break;
  }
  throw Error("no concrete candidates at " + target::to_string(ty));
}

}  // namespace

WorstCase measure_worst_case(const TargetExpr& program,
                             std::span<const ArgSpec> args, std::uint64_t n,
                             std::uint64_t budget) {
  require_one_sweep(args);
  std::vector<TargetTy> doms = curried_domains(program, args.size());
  std::vector<std::vector<Value>> choices;
  TargetExpr call = program;
  for (std::size_t i = 0; i < args.size(); ++i) {
    call = target::app(call, target::var("a" + std::to_string(i)));
    const ArgSpec& a = args[i];
    if (const auto* f = std::get_if<FixedArg>(&a)) {
      choices.push_back(candidates(doms[i], f->potential, n));
    } else if (const auto* t = std::get_if<FunctionArg>(&a)) {
      choices.push_back({target::eval(t->term, {}, budget).value});
    } else {
      choices.push_back(candidates(doms[i], n, n));
    }
  }
  WorstCase worst;
  std::vector<std::size_t> pick(args.size(), 0);
  while (true) {
    target::ValueEnv env;
    std::string shown;
    for (std::size_t i = 0; i < args.size(); ++i) {
      const Value& v = choices[i][pick[i]];
      env = env.extend("a" + std::to_string(i), v);
      if (i) shown += ' ';
      shown += target::to_string(v);
    }
    std::uint64_t cost = target::eval(call, env, budget).cost;
    ++worst.inputs_tried;
    if (worst.inputs_tried == 1 || cost > worst.cost) {
      worst.cost = cost;
      worst.input = shown;
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return worst;
}

}  // namespace costcert::harness
