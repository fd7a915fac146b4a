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

#include <cstdint>
#include <random>
#include <vector>

#include "costcert/error.h"
#include "costcert/harness.h"
#include "costcert/target_eval.h"
#include "costcert/target_syntax.h"
#include "doctest.h"
#include "support/corpus.h"
#include "support/derivation_oracle.h"

namespace costcert::target {
namespace {

std::uint64_t cost_of(const std::string& text) {
  return eval(parse(text), {}).cost;
}

std::uint64_t oracle_cost(const TargetExpr& e) {
  return oracle::derive(e).tree.size();
}

TEST_CASE("eval examples") {
  EvalResult five = eval(int_const(5), {});
  CHECK(std::get<std::int64_t>(five.value.v) == 5);
  CHECK(five.cost == 1);

  TargetExpr le = rel(RelOp::kLe, int_const(3), int_const(5));
  EvalResult r = eval(le, {});
  CHECK(std::get<bool>(r.value.v));
  CHECK(r.cost == oracle_cost(le));
  CHECK(r.cost == 4);

  EvalResult c = eval(testing::load_program("case_if"), {});
  CHECK(to_string(c.value) == "[0,0]");
  CHECK(c.cost == 9);
}

TEST_CASE("ins 3 [5] agrees with the derivation oracle") {
  TargetExpr ins = testing::load_program("ins");
  TargetExpr e = app(app(ins, int_const(3)), parse("[5]"));
  EvalResult r = eval(e, {});
  CHECK(to_string(r.value) == "[3,5]");
  oracle::Outcome o = oracle::derive(e);
  CHECK(oracle::show(o.value) == "[3,5]");
  CHECK(r.cost == o.tree.size());
}

TEST_CASE("cost decomposes over the rules") {
  // Cons: 1 + head + tail.
  CHECK(cost_of("(1 + 2) :: [3]") == 1 + cost_of("1 + 2") + cost_of("[3]"));
  // If: 1 + test + taken branch.
  CHECK(cost_of("if 1 < 2 then 7 else [1,2,3] = [1]") ==
        1 + cost_of("1 < 2") + cost_of("7"));
  CHECK(cost_of("if 2 < 1 then [1,2,3] else nil") ==
        1 + cost_of("2 < 1") + cost_of("nil"));
  // App: 1 + function + argument + body under the extended environment.
  TargetExpr body = parse("x * x");
  std::uint64_t body_cost =
      eval(body, ValueEnv{}.extend("x", make_int(6))).cost;
  CHECK(cost_of("(\\x:int. x * x) (2 + 4)") ==
        1 + cost_of("\\x:int. x * x") + cost_of("2 + 4") + body_cost);
}

TEST_CASE("fold unrolls once per element plus one nil rule") {
  // Constant base and step: the outer rule pays for the literal and the
  // step; every recursive level over the fresh tail variable then costs
  // 1 (rule) + 1 (lookup) + 1 (step or base).
  for (std::size_t k = 0; k <= 6; ++k) {
    std::vector<std::int64_t> xs(k, 1);
    TargetExpr lit = list_literal(xs);
    TargetExpr f = fold(lit, int_const(0), "x", "xs", "w", int_const(1));
    std::uint64_t lit_cost = eval(lit, {}).cost;
    CHECK(eval(f, {}).cost == lit_cost + 2 + 3 * k);
    CHECK(eval(f, {}).cost == oracle_cost(f));
    oracle::Outcome o = oracle::derive(f);
    std::size_t folds = 0;
    const oracle::Derivation* d = &o.tree;
    while (true) {
      ++folds;
      if (d->rule == "fold-nil") break;
      CHECK(d->rule == "fold-cons");
      if (folds > 1) CHECK(d->premises[0].rule == "var");
      d = &d->premises[1];
    }
    CHECK(folds == k + 1);
  }
}

TEST_CASE("evaluation matches the oracle on generated programs") {
  harness::ProbeConfig cfg;
  std::mt19937_64 rng(5);
  int compared = 0;
  for (int i = 0; i < 400; ++i) {
    TargetExpr e = harness::gen_typed_term(rng(), 5, TargetTy::IntList(), {},
                                           cfg);
    EvalResult r;
    try {
      r = eval(e, {});
    } catch (const ArithmeticOverflow&) {
      continue;
    }
    oracle::Outcome o = oracle::derive(e);
    INFO(print(e));
    CHECK(r.cost == o.tree.size());
    CHECK(to_string(r.value) == oracle::show(o.value));
    ++compared;
  }
  CHECK(compared > 300);
}

TEST_CASE("value_size") {
  CHECK(value_size(make_int(42), TargetTy::Int()) == 1);
  CHECK(value_size(make_bool(false), TargetTy::Bool()) == 1);
  CHECK(value_size(make_list(std::vector<std::int64_t>{}),
                   TargetTy::IntList()) == 0);
  CHECK(value_size(make_list(std::vector<std::int64_t>{0, 0}),
                   TargetTy::IntList()) == 2);
  Value clo = eval(parse("\\x:int. x"), {}).value;
  CHECK_THROWS_AS(
      value_size(clo, TargetTy::Arrow(TargetTy::Int(), TargetTy::Int())),
      EvalError);
  CHECK_THROWS_AS(value_size(make_int(1), TargetTy::IntList()), EvalError);
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(eval(var("zz"), {}), EvalError);
  CHECK_THROWS_AS(eval(parse("1 2"), {}), EvalError);
  CHECK_THROWS_AS(eval(parse("9223372036854775807 + 1"), {}),
                  ArithmeticOverflow);
  CHECK_THROWS_AS(eval(parse("(-9223372036854775808) * (-1)"), {}),
                  ArithmeticOverflow);
  TargetExpr loop = parse(
      "fold [1,2,3,4,5,6,7,8] of (0, [x, xs, w] "
      "fold [1,2,3,4,5,6,7,8] of (w, [y, ys, v] v + 1))");
  CHECK_THROWS_AS(eval(loop, {}, 50), BudgetExhausted);
  CHECK(eval(loop, {}).cost > 50);
}

TEST_CASE("evaluation is deterministic and uses the environment") {
  TargetExpr e = parse("case xs of (0, [y, ys] y + n)");
  ValueEnv env = ValueEnv{}
                     .extend("n", make_int(10))
                     .extend("xs", make_list(std::vector<std::int64_t>{4, 5}));
  EvalResult a = eval(e, env), b = eval(e, env);
  CHECK(to_string(a.value) == "14");
  CHECK(a.cost == b.cost);
  CHECK(to_string(eval(var("n"), env.extend("n", make_int(3))).value) == "3");
}

}  // namespace
}  // namespace costcert::target
