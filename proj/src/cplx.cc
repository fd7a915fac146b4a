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

#include "costcert/cplx.h"

#include <algorithm>
#include <sstream>
#include <vector>

#include "costcert/error.h"

namespace costcert::cplx {

CTy CTy::Prod(CTy potential) {
  CTy t(Kind::kProd);
  t.kids_ = std::make_shared<const std::pair<CTy, CTy>>(std::move(potential),
                                                         Nat());
  return t;
}

CTy CTy::Arrow(CTy domain, CTy codomain) {
  CTy t(Kind::kArrow);
  t.kids_ = std::make_shared<const std::pair<CTy, CTy>>(std::move(domain),
                                                         std::move(codomain));
  return t;
}

bool operator==(const CTy& a, const CTy& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case CTy::Kind::kNat:
      return true;
    case CTy::Kind::kProd:
      return a.first() == b.first();
    case CTy::Kind::kArrow:
      return a.first() == b.first() && a.second() == b.second();
  }
  return false;
}

std::string to_string(const CTy& ty) {
  switch (ty.kind()) {
    case CTy::Kind::kNat:
      return "N";
    case CTy::Kind::kProd: {
      std::string pot = to_string(ty.first());
      if (ty.first().kind() == CTy::Kind::kArrow) pot = "(" + pot + ")";
      return "N x " + pot;
    }
    case CTy::Kind::kArrow: {
      std::string dom = to_string(ty.first());
      if (ty.first().kind() == CTy::Kind::kArrow) dom = "(" + dom + ")";
      return dom + " -> " + to_string(ty.second());
    }
  }
  return "?";
}

namespace {

CplxExpr make(auto node) {
  return std::make_shared<const CNode>(CNode{std::move(node)});
}

}  // namespace

CplxExpr cvar(std::string name) { return make(CVar{std::move(name)}); }
CplxExpr nat(std::uint64_t value) { return make(NatConst{value}); }
CplxExpr plus(CplxExpr lhs, CplxExpr rhs) {
  return make(Plus{std::move(lhs), std::move(rhs)});
}
CplxExpr max(CplxExpr lhs, CplxExpr rhs) {
  return make(Max{std::move(lhs), std::move(rhs)});
}
CplxExpr pair(CplxExpr cost, CplxExpr pot) {
  return make(Pair{std::move(cost), std::move(pot)});
}
CplxExpr proj_cost(CplxExpr e) { return make(ProjCost{std::move(e)}); }
CplxExpr proj_pot(CplxExpr e) { return make(ProjPot{std::move(e)}); }
CplxExpr star_lam(std::string binder, CTy binder_pot, CplxExpr body) {
  return make(StarLam{std::move(binder), std::move(binder_pot), std::move(body)});
}
CplxExpr star_app(CplxExpr fn, CplxExpr arg) {
  return make(StarApp{std::move(fn), std::move(arg)});
}
CplxExpr pcase(CplxExpr scrutinee, CplxExpr zero, std::string p,
               std::string ps, CplxExpr succ) {
  return make(PCase{std::move(scrutinee), std::move(zero), std::move(p),
                    std::move(ps), std::move(succ)});
}
CplxExpr pfold(CplxExpr scrutinee, CplxExpr zero, std::string p,
               std::string ps, std::string w, CplxExpr succ) {
  return make(PFold{std::move(scrutinee), std::move(zero), std::move(p),
                    std::move(ps), std::move(w), std::move(succ)});
}

CplxExpr dally(CplxExpr n, const CplxExpr& e) {
  return pair(plus(std::move(n), proj_cost(e)), proj_pot(e));
}

// ---------------------------------------------------------------------------
// Typing

namespace {

[[noreturn]] void type_error(const std::string& what, const CplxExpr& e) {
  throw TypeError(what + " in `" + print(e) + "`");
}

CTy expect_complexity(const CTypeContext& ctx, const CplxExpr& sub,
                      const char* what, const CplxExpr& e) {
  CTy t = ctypecheck(ctx, sub);
  if (!t.is_complexity()) {
    type_error(std::string(what) + " of non-product type " + to_string(t), e);
  }
  return t;
}

void expect_nat(const CTypeContext& ctx, const CplxExpr& sub,
                const char* what, const CplxExpr& e) {
  CTy t = ctypecheck(ctx, sub);
  if (!t.is_nat()) {
    type_error(std::string(what) + " at non-Nat type " + to_string(t), e);
  }
}

}  // namespace

CTy ctypecheck(const CTypeContext& ctx, const CplxExpr& e) {
  return std::visit(
      [&](const auto& n) -> CTy {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, CVar>) {
          const CTy* t = ctx.find(n.name);
          if (t == nullptr) type_error("unbound variable `" + n.name + "`", e);
          return *t;
        } else if constexpr (std::is_same_v<N, NatConst>) {
          return CTy::Nat();
        } else if constexpr (std::is_same_v<N, Plus>) {
          expect_nat(ctx, n.lhs, "Plus", e);
          expect_nat(ctx, n.rhs, "Plus", e);
          return CTy::Nat();
        } else if constexpr (std::is_same_v<N, Max>) {
          CTy a = ctypecheck(ctx, n.lhs);
          CTy b = ctypecheck(ctx, n.rhs);
          if (!(a == b)) {
            type_error("Max at mismatched types " + to_string(a) + " and " +
                           to_string(b),
                       e);
          }
          return a;
        } else if constexpr (std::is_same_v<N, Pair>) {
          expect_nat(ctx, n.cost, "cost component", e);
          CTy pot = ctypecheck(ctx, n.pot);
          if (!pot.is_potential()) {
            type_error("potential component of non-potential type " +
                           to_string(pot),
                       e);
          }
          return CTy::Prod(pot);
        } else if constexpr (std::is_same_v<N, ProjCost>) {
          expect_complexity(ctx, n.e, "projection", e);
          return CTy::Nat();
        } else if constexpr (std::is_same_v<N, ProjPot>) {
          return expect_complexity(ctx, n.e, "projection", e).first();
        } else if constexpr (std::is_same_v<N, StarLam>) {
          if (!n.binder_pot.is_potential()) {
            type_error("binder annotation " + to_string(n.binder_pot) +
                           " is not a potential type",
                       e);
          }
          CTy body = expect_complexity(
              ctx.extend(n.binder, CTy::Prod(n.binder_pot)), n.body,
              "lambda body", e);
          return CTy::FnComplexity(n.binder_pot, body);
        } else if constexpr (std::is_same_v<N, StarApp>) {
          CTy f = ctypecheck(ctx, n.fn);
          if (!f.is_complexity() || f.first().kind() != CTy::Kind::kArrow) {
            type_error("StarApp of non-function complexity " + to_string(f),
                       e);
          }
          CTy arg = ctypecheck(ctx, n.arg);
          if (!(arg == CTy::Prod(f.first().first()))) {
            type_error("StarApp argument has type " + to_string(arg) +
                           ", expected " +
                           to_string(CTy::Prod(f.first().first())),
                       e);
          }
          return f.first().second();
        } else if constexpr (std::is_same_v<N, PCase>) {
          expect_nat(ctx, n.scrutinee, "pcase scrutinee", e);
          CTy zero = expect_complexity(ctx, n.zero, "pcase branch", e);
          CTypeContext inner =
              ctx.extend(n.p, CTy::Nat()).extend(n.ps, CTy::Nat());
          CTy succ = ctypecheck(inner, n.succ);
          if (!(succ == zero)) type_error("pcase branch-type mismatch", e);
          return zero;
        } else {
          static_assert(std::is_same_v<N, PFold>);
          expect_nat(ctx, n.scrutinee, "pfold scrutinee", e);
          CTy zero = expect_complexity(ctx, n.zero, "pfold branch", e);
          CTypeContext inner = ctx.extend(n.p, CTy::Nat())
                                   .extend(n.ps, CTy::Nat())
                                   .extend(n.w, zero);
          CTy succ = ctypecheck(inner, n.succ);
          if (!(succ == zero)) type_error("pfold branch-type mismatch", e);
          return zero;
        }
      },
      e->node);
}

// ---------------------------------------------------------------------------
// Free variables, equality

namespace {

void collect_free(const CplxExpr& e, std::vector<std::string>& bound,
                  std::set<std::string>& out) {
  auto under = [&](std::initializer_list<std::string> names,
                   const CplxExpr& body) {
    bound.insert(bound.end(), names);
    collect_free(body, bound, out);
    bound.resize(bound.size() - names.size());
  };
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, CVar>) {
          if (std::find(bound.begin(), bound.end(), n.name) == bound.end()) {
            out.insert(n.name);
          }
        } else if constexpr (std::is_same_v<N, Plus> ||
                             std::is_same_v<N, Max>) {
          collect_free(n.lhs, bound, out);
          collect_free(n.rhs, bound, out);
        } else if constexpr (std::is_same_v<N, Pair>) {
          collect_free(n.cost, bound, out);
          collect_free(n.pot, bound, out);
        } else if constexpr (std::is_same_v<N, ProjCost> ||
                             std::is_same_v<N, ProjPot>) {
          collect_free(n.e, bound, out);
        } else if constexpr (std::is_same_v<N, StarLam>) {
          under({n.binder}, n.body);
        } else if constexpr (std::is_same_v<N, StarApp>) {
          collect_free(n.fn, bound, out);
          collect_free(n.arg, bound, out);
        } else if constexpr (std::is_same_v<N, PCase>) {
          collect_free(n.scrutinee, bound, out);
          collect_free(n.zero, bound, out);
          under({n.p, n.ps}, n.succ);
        } else if constexpr (std::is_same_v<N, PFold>) {
          collect_free(n.scrutinee, bound, out);
          collect_free(n.zero, bound, out);
          under({n.p, n.ps, n.w}, n.succ);
        }
      },
      e->node);
}

}  // namespace

std::set<std::string> free_vars(const CplxExpr& e) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(e, bound, out);
  return out;
}

bool syntactically_equal(const CplxExpr& a, const CplxExpr& b) {
  if (a == b) return true;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& na) -> bool {
        using N = std::decay_t<decltype(na)>;
        const auto& nb = std::get<N>(b->node);
        auto eq = [](const CplxExpr& x, const CplxExpr& y) {
          return syntactically_equal(x, y);
        };
        if constexpr (std::is_same_v<N, CVar>) {
          return na.name == nb.name;
        } else if constexpr (std::is_same_v<N, NatConst>) {
          return na.value == nb.value;
        } else if constexpr (std::is_same_v<N, Plus> ||
                             std::is_same_v<N, Max>) {
          return eq(na.lhs, nb.lhs) && eq(na.rhs, nb.rhs);
        } else if constexpr (std::is_same_v<N, Pair>) {
          return eq(na.cost, nb.cost) && eq(na.pot, nb.pot);
        } else if constexpr (std::is_same_v<N, ProjCost> ||
                             std::is_same_v<N, ProjPot>) {
          return eq(na.e, nb.e);
        } else if constexpr (std::is_same_v<N, StarLam>) {
          return na.binder == nb.binder && na.binder_pot == nb.binder_pot &&
                 eq(na.body, nb.body);
        } else if constexpr (std::is_same_v<N, StarApp>) {
          return eq(na.fn, nb.fn) && eq(na.arg, nb.arg);
        } else if constexpr (std::is_same_v<N, PCase>) {
          return na.p == nb.p && na.ps == nb.ps &&
                 eq(na.scrutinee, nb.scrutinee) && eq(na.zero, nb.zero) &&
                 eq(na.succ, nb.succ);
        } else {
          return na.p == nb.p && na.ps == nb.ps && na.w == nb.w &&
                 eq(na.scrutinee, nb.scrutinee) && eq(na.zero, nb.zero) &&
                 eq(na.succ, nb.succ);
        }
      },
      a->node);
}

// ---------------------------------------------------------------------------
// Printing

// Pair(n + e_c, e_p) sharing one `e` node, as built by dally().
bool as_dally(const Pair& p, CplxExpr* n, CplxExpr* e) {
  const auto* sum = std::get_if<Plus>(&p.cost->node);
  const auto* pot = std::get_if<ProjPot>(&p.pot->node);
  if (sum == nullptr || pot == nullptr) return false;
  const auto* cost = std::get_if<ProjCost>(&sum->rhs->node);
  if (cost == nullptr || cost->e != pot->e) return false;
  *n = sum->lhs;
  *e = pot->e;
  return true;
}

namespace {

enum Level { kTop = 0, kPlus, kStar, kPostfix };

void emit(const CplxExpr& e, Level ctx, std::ostringstream& out) {
  auto wrap = [&](Level own, auto body) {
    bool paren = own < ctx;
    if (paren) out << '(';
    body();
    if (paren) out << ')';
  };
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, CVar>) {
          out << n.name;
        } else if constexpr (std::is_same_v<N, NatConst>) {
          out << n.value;
        } else if constexpr (std::is_same_v<N, Plus>) {
          wrap(kPlus, [&] {
            emit(n.lhs, kPlus, out);
            out << " + ";
            emit(n.rhs, kStar, out);
          });
        } else if constexpr (std::is_same_v<N, Max>) {
          out << "max(";
          emit(n.lhs, kTop, out);
          out << ", ";
          emit(n.rhs, kTop, out);
          out << ')';
        } else if constexpr (std::is_same_v<N, Pair>) {
          CplxExpr amount, inner;
          if (as_dally(n, &amount, &inner)) {
            out << "dally(";
            emit(amount, kTop, out);
            out << ", ";
            emit(inner, kTop, out);
            out << ')';
            return;
          }
          out << '(';
          emit(n.cost, kTop, out);
          out << ", ";
          emit(n.pot, kTop, out);
          out << ')';
        } else if constexpr (std::is_same_v<N, ProjCost> ||
                             std::is_same_v<N, ProjPot>) {
          emit(n.e, kPostfix, out);
          out << (std::is_same_v<N, ProjCost> ? "_c" : "_p");
        } else if constexpr (std::is_same_v<N, StarLam>) {
          wrap(kTop, [&] {
            out << "\\*" << n.binder << ':' << to_string(n.binder_pot) << ". ";
            emit(n.body, kTop, out);
          });
        } else if constexpr (std::is_same_v<N, StarApp>) {
          wrap(kStar, [&] {
            emit(n.fn, kStar, out);
            out << " * ";
            emit(n.arg, kPostfix, out);
          });
        } else if constexpr (std::is_same_v<N, PCase>) {
          wrap(kTop, [&] {
            out << "pcase ";
            emit(n.scrutinee, kTop, out);
            out << " of (";
            emit(n.zero, kTop, out);
            out << ", [" << n.p << ", " << n.ps << "] ";
            emit(n.succ, kTop, out);
            out << ')';
          });
        } else {
          wrap(kTop, [&] {
            out << "pfold ";
            emit(n.scrutinee, kTop, out);
            out << " of (";
            emit(n.zero, kTop, out);
            out << ", [" << n.p << ", " << n.ps << ", " << n.w << "] ";
            emit(n.succ, kTop, out);
            out << ')';
          });
        }
      },
      e->node);
}

}  // namespace

std::string print(const CplxExpr& e) {
  std::ostringstream out;
  emit(e, kTop, out);
  return out.str();
}

}  // namespace costcert::cplx
