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

#include <random>
#include <string>

#include "costcert/error.h"
#include "costcert/harness.h"
#include "costcert/target_syntax.h"
#include "doctest.h"
#include "support/corpus.h"

namespace costcert::target {
namespace {

TargetTy IntToInt() { return TargetTy::Arrow(TargetTy::Int(), TargetTy::Int()); }

TEST_CASE("types print with right-associative arrows") {
  CHECK(to_string(TargetTy::IntList()) == "int*");
  CHECK(to_string(TargetTy::Arrow(TargetTy::Int(), IntToInt())) ==
        "int -> int -> int");
  CHECK(to_string(TargetTy::Arrow(IntToInt(), TargetTy::Int())) ==
        "(int -> int) -> int");
}

TEST_CASE("typecheck examples") {
  CHECK(typecheck({}, int_const(3)) == TargetTy::Int());
  CHECK(typecheck({}, nil()) == TargetTy::IntList());
  CHECK(typecheck({}, cons(int_const(1), nil())) == TargetTy::IntList());
  CHECK(typecheck({}, lam("x", TargetTy::Int(), var("x"))) == IntToInt());
  CHECK(typecheck({}, rel(RelOp::kLe, int_const(3), int_const(5))) ==
        TargetTy::Bool());
  TypeContext ctx = TypeContext{}.extend("h", IntToInt());
  CHECK(typecheck(ctx, app(var("h"), int_const(2))) == TargetTy::Int());
}

TEST_CASE("typecheck errors") {
  auto message = [](const TargetExpr& e) {
    try {
      typecheck({}, e);
    } catch (const TypeError& err) {
      return std::string(err.what());
    }
    return std::string("no error");
  };
  CHECK(message(var("y")).find("unbound variable") != std::string::npos);
  CHECK(message(rel(RelOp::kLt, bool_const(true), int_const(1)))
            .find("relating non-integers") != std::string::npos);
  CHECK(message(arith(ArithOp::kAdd, nil(), int_const(1)))
            .find("arithmetic on non-integers") != std::string::npos);
  CHECK(message(if_(bool_const(true), int_const(1), nil()))
            .find("branch-type mismatch") != std::string::npos);
  CHECK(message(app(int_const(3), nil())).find("applying a non-arrow") !=
        std::string::npos);
  CHECK_THROWS_AS(typecheck({}, cons(bool_const(true), nil())), TypeError);
  CHECK_THROWS_AS(typecheck({}, case_(int_const(1), nil(), "x", "xs", nil())),
                  TypeError);
}

TEST_CASE("print examples") {
  CHECK(print(nil()) == "nil");
  CHECK(print(cons(int_const(1), nil())) == "1 :: nil");
  CHECK(print(lam("x", TargetTy::Int(), var("x"))) == "\\x:int. x");
  CHECK(print(int_const(-3)) == "(-3)");
  CHECK(print(app(app(var("f"), var("x")), var("y"))) == "f x y");
  CHECK(print(app(var("f"), app(var("x"), var("y")))) == "f (x y)");
}

TEST_CASE("parse surface syntax") {
  CHECK(alpha_equivalent(parse("[1, 2]"),
                         cons(int_const(1), cons(int_const(2), nil()))));
  CHECK(alpha_equivalent(parse("1 :: 2 :: nil"), parse("1 :: (2 :: nil)")));
  CHECK(alpha_equivalent(parse("1 + 2 * 3"),
                         arith(ArithOp::kAdd, int_const(1),
                               arith(ArithOp::kMul, int_const(2),
                                     int_const(3)))));
  CHECK(alpha_equivalent(parse("1 - 2 - 3"),
                         arith(ArithOp::kSub,
                               arith(ArithOp::kSub, int_const(1), int_const(2)),
                               int_const(3))));
  CHECK(alpha_equivalent(parse("-- comment\n(\\x:int. x) 4"),
                         app(lam("x", TargetTy::Int(), var("x")), int_const(4))));
  CHECK(alpha_equivalent(parse("\\x:int. x"), parse("\\y:int. y")));
  CHECK_FALSE(alpha_equivalent(parse("\\x:int. \\y:int. x"),
                               parse("\\x:int. \\y:int. y")));
  CHECK(print(parse("-9223372036854775808")) == "(-9223372036854775808)");
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse("\\x. x"), ParseError);
  CHECK_THROWS_AS(parse("1 < 2 < 3"), ParseError);
  CHECK_THROWS_AS(parse("99999999999999999999"), ParseError);
  CHECK_THROWS_AS(parse("case nil of (0, [x, x] 1)"), ParseError);
  CHECK_THROWS_AS(parse("\\if:int. 1"), ParseError);
  CHECK_THROWS_AS(parse("(1"), ParseError);
  CHECK_THROWS_AS(parse("1 2 )"), ParseError);
  try {
    parse("1 +\n  )");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).rfind("2:3:", 0) == 0);
  }
}

TEST_CASE("defs expand by substitution") {
  TargetExpr e = parse_program("def two = 2;\ndef f = \\x:int. x * two;\nf 5");
  CHECK(alpha_equivalent(e, parse("(\\x:int. x * 2) 5")));
  // Later defs shadow earlier ones and may refer to them.
  CHECK(alpha_equivalent(parse_program("def f = 1; def f = f + 2; f"),
                         parse("1 + 2")));
  CHECK_THROWS_AS(parse_program("def f = 1 f"), ParseError);
  CHECK_THROWS_AS(parse_program("def if = 1; 2"), ParseError);
}

TEST_CASE("corpus typechecks") {
  using testing::load_program;
  CHECK(to_string(typecheck({}, load_program("ins"))) ==
        "int -> int* -> int*");
  CHECK(to_string(typecheck({}, load_program("ins_sort"))) == "int* -> int*");
  CHECK(to_string(typecheck({}, load_program("map"))) ==
        "(int -> int) -> int* -> int*");
  CHECK(to_string(typecheck({}, load_program("list_fold"))) ==
        "(int -> int* -> int*) -> int* -> int* -> int*");
  CHECK(typecheck({}, load_program("case_if")) == TargetTy::IntList());
}

TEST_CASE("substitution avoids capture") {
  TargetExpr e = lam("y", TargetTy::Int(), arith(ArithOp::kAdd, var("x"), var("y")));
  TargetExpr got = substitute(e, {{"x", var("y")}});
  CHECK(alpha_equivalent(got, parse("\\z:int. y + z")));
  CHECK(free_vars(got) == std::set<std::string>{"y"});
}

TEST_CASE("generated terms round-trip, typecheck deterministically, and weaken") {
  harness::ProbeConfig cfg;
  std::mt19937_64 rng(11);
  const TargetTy types[] = {TargetTy::Int(), TargetTy::Bool(),
                            TargetTy::IntList(), IntToInt(),
                            TargetTy::Arrow(TargetTy::IntList(), IntToInt())};
  for (int i = 0; i < 500; ++i) {
    const TargetTy& ty = types[i % 5];
    TargetExpr e = harness::gen_typed_term(rng(), 1 + i % 6, ty, {}, cfg);
    TargetTy got = typecheck({}, e);
    REQUIRE(got == ty);
    CHECK(typecheck({}, e) == got);
    TargetExpr back = parse(print(e));
    INFO(print(e));
    CHECK(alpha_equivalent(back, e));
    CHECK(typecheck(TypeContext{}.extend("unused", IntToInt()), e) == got);
  }
}

}  // namespace
}  // namespace costcert::target
