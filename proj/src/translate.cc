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

#include "costcert/translate.h"

#include <set>
#include <utility>
#include <vector>

namespace costcert::translate {

using cplx::CplxExpr;
using cplx::CTy;

CTy pot_ty(const target::TargetTy& t) {
  if (t.is_base()) return CTy::Nat();
  return CTy::Arrow(pot_ty(t.domain()), translate_ty(t.codomain()));
}

CTy translate_ty(const target::TargetTy& t) { return CTy::Prod(pot_ty(t)); }

cplx::CTypeContext translate_ctx(const target::TypeContext& ctx) {
  cplx::CTypeContext out;
  for (const auto& [name, ty] : ctx.bindings()) {
    out = out.extend(name, translate_ty(ty));
  }
  return out;
}

namespace {

using Bindings = std::map<std::string, CplxExpr>;

std::string fresh_name(const std::string& base,
                       const std::set<std::string>& avoid) {
  if (!avoid.contains(base)) return base;
  for (int i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!avoid.contains(candidate)) return candidate;
  }
}

std::pair<std::vector<std::string>, CplxExpr> subst_under(
    std::vector<std::string> binders, const CplxExpr& body,
    const Bindings& bindings) {
  Bindings inner = bindings;
  for (const auto& b : binders) inner.erase(b);
  if (inner.empty()) return {binders, body};

  std::set<std::string> replacement_fv;
  for (const auto& [name, r] : inner) {
    auto fv = cplx::free_vars(r);
    replacement_fv.insert(fv.begin(), fv.end());
  }
  std::set<std::string> avoid = replacement_fv;
  auto body_fv = cplx::free_vars(body);
  avoid.insert(body_fv.begin(), body_fv.end());
  for (const auto& [name, r] : inner) avoid.insert(name);
  for (const auto& b : binders) avoid.insert(b);

  for (auto& b : binders) {
    if (!replacement_fv.contains(b)) continue;
    std::string renamed = fresh_name(b + "'", avoid);
    avoid.insert(renamed);
    inner[b] = cplx::cvar(renamed);
    b = renamed;
  }
  return {binders, subst(body, inner)};
}

// ‖t‖[x, xs ↦ (1, p), (1, ps)] for the case and fold clauses, choosing p
// and ps so that they capture nothing in ‖t‖ and differ from `extra`.
struct BranchBody {
  std::string p;
  std::string ps;
  CplxExpr body;
};

BranchBody bind_head_tail(const CplxExpr& translated, const std::string& head,
                          const std::string& tail,
                          const std::set<std::string>& extra) {
  std::set<std::string> avoid = cplx::free_vars(translated);
  avoid.insert(extra.begin(), extra.end());
  BranchBody out;
  out.p = fresh_name("p", avoid);
  avoid.insert(out.p);
  out.ps = fresh_name("ps", avoid);
  Bindings b;
  b[head] = cplx::pair(cplx::nat(1), cplx::cvar(out.p));
  b[tail] = cplx::pair(cplx::nat(1), cplx::cvar(out.ps));
  out.body = subst(translated, b);
  return out;
}

CplxExpr sum(std::uint64_t n, CplxExpr a) {
  return cplx::plus(cplx::nat(n), std::move(a));
}

}  // namespace

CplxExpr subst(const CplxExpr& e, const Bindings& bindings) {
  using namespace cplx;
  if (bindings.empty()) return e;
  return std::visit(
      [&](const auto& n) -> CplxExpr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, CVar>) {
          auto it = bindings.find(n.name);
          return it == bindings.end() ? e : it->second;
        } else if constexpr (std::is_same_v<N, NatConst>) {
          return e;
        } else if constexpr (std::is_same_v<N, Plus>) {
          return plus(subst(n.lhs, bindings), subst(n.rhs, bindings));
        } else if constexpr (std::is_same_v<N, Max>) {
          return max(subst(n.lhs, bindings), subst(n.rhs, bindings));
        } else if constexpr (std::is_same_v<N, Pair>) {
          // Keep dally's shared projection node shared.
          const auto* sum_node = std::get_if<Plus>(&n.cost->node);
          const auto* pot_node = std::get_if<ProjPot>(&n.pot->node);
          if (sum_node != nullptr && pot_node != nullptr) {
            const auto* c = std::get_if<ProjCost>(&sum_node->rhs->node);
            if (c != nullptr && c->e == pot_node->e) {
              return dally(subst(sum_node->lhs, bindings),
                           subst(pot_node->e, bindings));
            }
          }
          return pair(subst(n.cost, bindings), subst(n.pot, bindings));
        } else if constexpr (std::is_same_v<N, ProjCost>) {
          return proj_cost(subst(n.e, bindings));
        } else if constexpr (std::is_same_v<N, ProjPot>) {
          return proj_pot(subst(n.e, bindings));
        } else if constexpr (std::is_same_v<N, StarLam>) {
          auto [names, body] = subst_under({n.binder}, n.body, bindings);
          return star_lam(names[0], n.binder_pot, body);
        } else if constexpr (std::is_same_v<N, StarApp>) {
          return star_app(subst(n.fn, bindings), subst(n.arg, bindings));
        } else if constexpr (std::is_same_v<N, PCase>) {
          auto [names, body] = subst_under({n.p, n.ps}, n.succ, bindings);
          return pcase(subst(n.scrutinee, bindings), subst(n.zero, bindings),
                       names[0], names[1], body);
        } else {
          auto [names, body] = subst_under({n.p, n.ps, n.w}, n.succ, bindings);
          return pfold(subst(n.scrutinee, bindings), subst(n.zero, bindings),
                       names[0], names[1], names[2], body);
        }
      },
      e->node);
}

CplxExpr translate(const target::TargetExpr& e) {
  using namespace cplx;
  namespace t = target;
  return std::visit(
      [&](const auto& n) -> CplxExpr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, t::Var>) {
          return cvar(n.name);
        } else if constexpr (std::is_same_v<N, t::IntConst> ||
                             std::is_same_v<N, t::BoolConst>) {
          return pair(nat(1), nat(1));
        } else if constexpr (std::is_same_v<N, t::Nil>) {
          return pair(nat(1), nat(0));
        } else if constexpr (std::is_same_v<N, t::Cons>) {
          CplxExpr r = translate(n.head);
          CplxExpr s = translate(n.tail);
          return pair(plus(sum(1, proj_cost(r)), proj_cost(s)),
                      sum(1, proj_pot(s)));
        } else if constexpr (std::is_same_v<N, t::BinRel> ||
                             std::is_same_v<N, t::BinOp>) {
          // Integers and booleans have constant potential 1.
          CplxExpr r = translate(n.lhs);
          CplxExpr s = translate(n.rhs);
          return pair(plus(sum(2, proj_cost(r)), proj_cost(s)), nat(1));
        } else if constexpr (std::is_same_v<N, t::If>) {
          CplxExpr r = translate(n.test);
          return dally(sum(1, proj_cost(r)),
                       max(translate(n.then_branch), translate(n.else_branch)));
        } else if constexpr (std::is_same_v<N, t::Lam>) {
          return star_lam(n.binder, pot_ty(n.binder_ty), translate(n.body));
        } else if constexpr (std::is_same_v<N, t::App>) {
          return star_app(translate(n.fn), translate(n.arg));
        } else if constexpr (std::is_same_v<N, t::Case>) {
          CplxExpr r = translate(n.scrutinee);
          BranchBody b =
              bind_head_tail(translate(n.cons_branch), n.head, n.tail, {});
          return dally(sum(1, proj_cost(r)),
                       pcase(proj_pot(r), translate(n.nil_branch), b.p, b.ps,
                             b.body));
        } else {
          static_assert(std::is_same_v<N, t::Fold>);
          // The recurrence runs on the scrutinee's potential.
          CplxExpr r = translate(n.scrutinee);
          BranchBody b =
              bind_head_tail(translate(n.step), n.head, n.tail, {n.rec});
          return dally(sum(1, proj_cost(r)),
                       pfold(proj_pot(r), translate(n.nil_branch), b.p, b.ps,
                             n.rec, b.body));
        }
      },
      e->node);
}

}  // namespace costcert::translate
