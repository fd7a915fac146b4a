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
#include <string>

#include "costcert/cplx.h"
#include "costcert/cplx_sem.h"
#include "costcert/harness.h"
#include "costcert/target_syntax.h"
#include "costcert/translate.h"
#include "doctest.h"
#include "support/corpus.h"

namespace costcert::translate {
namespace {

using cplx::CTy;
using cplx::SemEnv;
using cplx::SemVal;
using target::TargetTy;
namespace c = cplx;

CTy NxN() { return CTy::Prod(CTy::Nat()); }

c::CplxExpr p2(std::uint64_t a, std::uint64_t b) {
  return c::pair(c::nat(a), c::nat(b));
}

TEST_CASE("type translation") {
  CHECK(translate_ty(TargetTy::Int()) == NxN());
  CHECK(translate_ty(TargetTy::IntList()) == NxN());
  CHECK(translate_ty(TargetTy::Bool()) == NxN());
  TargetTy int_to_int = TargetTy::Arrow(TargetTy::Int(), TargetTy::Int());
  CHECK(translate_ty(int_to_int) ==
        CTy::Prod(CTy::Arrow(CTy::Nat(), NxN())));
  CHECK(pot_ty(int_to_int) == CTy::Arrow(CTy::Nat(), NxN()));
  CHECK(pot_ty(TargetTy::IntList()) == CTy::Nat());

  CHECK(translate_ctx({}).empty());
  c::CTypeContext one = translate_ctx(target::TypeContext{}.extend("x", TargetTy::Int()));
  REQUIRE(one.find("x") != nullptr);
  CHECK(*one.find("x") == NxN());
  c::CTypeContext h = translate_ctx(target::TypeContext{}.extend("h", int_to_int));
  CHECK(*h.find("h") == translate_ty(int_to_int));
}

TEST_CASE("term translation clauses") {
  using namespace target;
  CHECK(c::syntactically_equal(translate(int_const(7)), p2(1, 1)));
  CHECK(c::syntactically_equal(translate(bool_const(false)), p2(1, 1)));
  CHECK(c::syntactically_equal(translate(nil()), p2(1, 0)));
  CHECK(c::syntactically_equal(translate(var("z")), c::cvar("z")));
  CHECK(to_string(c::denote(translate(parse("3 <= 5")), {})) == "(4, 1)");
  CHECK(to_string(c::denote(translate(parse("3 * 5")), {})) == "(4, 1)");
  CHECK(to_string(c::denote(translate(parse("[1, 2]")), {})) == "(5, 2)");
  // dally(1 + 1, max((1, 1), (1, 0))).
  CHECK(to_string(c::denote(translate(parse("if true then 1 :: nil else nil")),
                            {})) == "(5, 1)");
  CHECK(c::print(translate(parse("\\x:int. x"))) == "\\*x:N. x");
  CHECK(c::print(translate(parse("f y"))) == "f * y");
}

TEST_CASE("case_if bound dominates the measured cost and size") {
  SemVal b = c::denote(translate(testing::load_program("case_if")), {});
  CHECK(b.cost() >= 9);
  CHECK(b.pot().nat() >= 2);
  CHECK(to_string(b) == "(11, 2)");
}

// λ*x.λ*xs. pfold xs_p of ((2+x_c, 1),
//   [p, ps, w] dally(4+x_c, (4+x_c, 2+ps) max (2+w_c, 1+w_p)))
c::CplxExpr reference_ins_fold() {
  c::CplxExpr xc = c::proj_cost(c::cvar("x"));
  c::CplxExpr step = c::dally(
      c::plus(c::nat(4), xc),
      c::max(c::pair(c::plus(c::nat(4), xc), c::plus(c::nat(2), c::cvar("ps"))),
             c::pair(c::plus(c::nat(2), c::proj_cost(c::cvar("w"))),
                     c::plus(c::nat(1), c::proj_pot(c::cvar("w"))))));
  return c::pfold(c::proj_pot(c::cvar("xs")),
                  c::pair(c::plus(c::nat(2), xc), c::nat(1)), "p", "ps", "w",
                  step);
}

TEST_CASE("ins translates to the hand-derived recurrence") {
  c::CplxExpr got = translate(testing::load_program("ins"));
  CHECK(c::ctypecheck({}, got) ==
        translate_ty(target::typecheck({}, testing::load_program("ins"))));
  // The direct translation carries the scrutinee's own dally(1 + xs_c, .).
  c::CplxExpr reference = c::star_lam(
      "x", CTy::Nat(),
      c::star_lam("xs", CTy::Nat(),
                  c::dally(c::plus(c::nat(1), c::proj_cost(c::cvar("xs"))),
                           reference_ins_fold())));
  SemVal lhs = c::denote(got, {});
  SemVal rhs = c::denote(reference, {});
  for (std::uint64_t xc = 0; xc < 4; ++xc) {
    for (std::uint64_t xsc = 0; xsc < 4; ++xsc) {
      for (std::uint64_t n = 0; n < 12; ++n) {
        SemVal x = SemVal::Pair(xc, SemVal::Nat(1));
        SemVal xs = SemVal::Pair(xsc, SemVal::Nat(n));
        SemVal a = c::star_apply(c::star_apply(lhs, x), xs);
        SemVal b = c::star_apply(c::star_apply(rhs, x), xs);
        CHECK(to_string(a) == to_string(b));
        // Inside the star abstractions both arguments have cost 1.
        SemVal fold_only = c::denote(
            reference_ins_fold(),
            SemEnv{}
                .extend("x", SemVal::Pair(1, SemVal::Nat(1)))
                .extend("xs", SemVal::Pair(1, SemVal::Nat(n))));
        // f_ins = dally(4 + x_c + xs_c, g(xs_p)) plus the inner
        // dally(1 + 1, .) of the scrutinee.
        CHECK(a.cost() == 4 + xc + xsc + 2 + fold_only.cost());
        CHECK(fold_only.cost() == 12 * n + 3);
        CHECK(fold_only.cost() <= 13 * n + 3);
      }
    }
  }
}

TEST_CASE("substituting head and tail reproduces the step expression") {
  // Translated step of ins, before binding y and ys.
  target::TargetExpr step = target::parse(
      "if x <= y then x :: y :: ys else y :: w");
  c::CplxExpr got =
      subst(translate(step), {{"y", c::pair(c::nat(1), c::cvar("p"))},
                              {"ys", c::pair(c::nat(1), c::cvar("ps"))}});
  c::CplxExpr xc = c::proj_cost(c::cvar("x"));
  c::CplxExpr want = c::dally(
      c::plus(c::nat(4), xc),
      c::max(c::pair(c::plus(c::nat(4), xc), c::plus(c::nat(2), c::cvar("ps"))),
             c::pair(c::plus(c::nat(2), c::proj_cost(c::cvar("w"))),
                     c::plus(c::nat(1), c::proj_pot(c::cvar("w"))))));
  CHECK(c::free_vars(got) == std::set<std::string>{"p", "ps", "w", "x"});
  for (std::uint64_t xcost = 0; xcost < 4; ++xcost) {
    for (std::uint64_t ps = 0; ps < 6; ++ps) {
      for (std::uint64_t wc = 0; wc < 8; wc += 3) {
        for (std::uint64_t wp = 0; wp < 8; wp += 2) {
          SemEnv env = SemEnv{}
                           .extend("x", SemVal::Pair(xcost, SemVal::Nat(1)))
                           .extend("p", SemVal::Nat(1))
                           .extend("ps", SemVal::Nat(ps))
                           .extend("w", SemVal::Pair(wc, SemVal::Nat(wp)));
          CHECK(to_string(c::denote(got, env)) ==
                to_string(c::denote(want, env)));
        }
      }
    }
  }
}

TEST_CASE("subst is capture-avoiding") {
  c::CplxExpr x_to = c::pair(c::nat(1), c::cvar("p"));
  CHECK(c::syntactically_equal(subst(c::cvar("x"), {{"x", x_to}}), x_to));
  c::CplxExpr lam = c::star_lam("p", CTy::Nat(), c::cvar("x"));
  c::CplxExpr got = subst(lam, {{"x", x_to}});
  CHECK(c::free_vars(got) == std::set<std::string>{"p"});
  CHECK(c::print(got) == "\\*p':N. (1, p)");
  // Simultaneous, not sequential.
  c::CplxExpr swap = subst(c::pair(c::cvar("a"), c::cvar("b")),
                           {{"a", c::cvar("b")}, {"b", c::cvar("a")}});
  CHECK(c::print(swap) == "(b, a)");
  // Bound occurrences are untouched.
  c::CplxExpr shadow = c::star_lam("x", CTy::Nat(), c::cvar("x"));
  CHECK(c::syntactically_equal(subst(shadow, {{"x", x_to}}), shadow));
}

TEST_CASE("fresh branch binders avoid the step's free variables") {
  target::TargetExpr e = target::parse(
      "\\p:int. case [1] of (0, [y, ys] p + y)");
  c::CplxExpr t = translate(e);
  CHECK(c::ctypecheck({}, t) == translate_ty(target::typecheck({}, e)));
  SemVal applied =
      c::star_apply(c::denote(t, {}), SemVal::Pair(1, SemVal::Nat(1)));
  CHECK(applied.pot().nat() == 1);
}

TEST_CASE("type preservation and variable bijection on generated terms") {
  harness::ProbeConfig cfg;
  std::mt19937_64 rng(3);
  TargetTy int_to_int = TargetTy::Arrow(TargetTy::Int(), TargetTy::Int());
  target::TypeContext ctx = target::TypeContext{}
                                .extend("n", TargetTy::Int())
                                .extend("h", int_to_int)
                                .extend("l", TargetTy::IntList());
  const TargetTy types[] = {TargetTy::Int(), TargetTy::IntList(), int_to_int,
                            TargetTy::Arrow(int_to_int, TargetTy::IntList())};
  for (int i = 0; i < 400; ++i) {
    target::TargetExpr e = harness::gen_typed_term(rng(), 5, types[i % 4], ctx, cfg);
    INFO(target::print(e));
    CHECK(harness::type_preserved(e, ctx));
    CHECK(c::free_vars(translate(e)) == target::free_vars(e));
  }
  for (const char* name : {"ins", "ins_sort", "map", "list_fold", "case_if"}) {
    CHECK(harness::type_preserved(testing::load_program(name), {}));
  }
}

}  // namespace
}  // namespace costcert::translate
