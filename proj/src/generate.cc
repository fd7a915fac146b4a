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

// Random generation of well-typed target and complexity terms.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "costcert/harness.h"
#include "harness_internal.h"

namespace costcert::harness {
namespace {

using target::TargetExpr;
using target::TargetTy;
using target::TypeContext;

// Visible bindings of `ctx` (innermost wins) whose type is `ty`.
template <typename Ctx, typename Ty>
std::vector<std::string> vars_of(const Ctx& ctx, const Ty& ty) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  auto all = ctx.bindings();
  for (auto it = all.rbegin(); it != all.rend(); ++it) {
    if (!seen.insert(it->first).second) continue;
    if (it->second == ty) out.push_back(it->first);
  }
  return out;
}

class TermGen {
 public:
  TermGen(std::uint64_t seed, const ProbeConfig& cfg) : rng_(seed), cfg_(cfg) {}

  TargetExpr gen(const TargetTy& ty, std::size_t depth,
                 const TypeContext& ctx) {
    if (depth <= 1) return leaf(ty, ctx);
    std::size_t d = depth - 1;

    // Bias toward the recursion and higher-order paths.
    if (coin(0.3)) {
      switch (pick(3)) {
        case 0:
          return gen_case(ty, d, ctx);
        case 1:
          return gen_fold(ty, d, ctx);
        default:
          return gen_app(ty, d, ctx);
      }
    }

    auto vars = vars_of(ctx, ty);
    if (!vars.empty() && coin(0.15)) return target::var(vars[pick(vars.size())]);
    if (coin(0.15)) {
      return target::if_(gen(TargetTy::Bool(), d, ctx), gen(ty, d, ctx),
                         gen(ty, d, ctx));
    }
    if (coin(0.1)) return leaf(ty, ctx);

    switch (ty.kind()) {
      case TargetTy::Kind::kInt: {
        static constexpr target::ArithOp kOps[] = {
            target::ArithOp::kAdd, target::ArithOp::kSub,
            target::ArithOp::kMul};
        return target::arith(kOps[pick(3)], gen(ty, d, ctx), gen(ty, d, ctx));
      }
      case TargetTy::Kind::kBool: {
        static constexpr target::RelOp kOps[] = {
            target::RelOp::kLt, target::RelOp::kLe, target::RelOp::kEq};
        return target::rel(kOps[pick(3)], gen(TargetTy::Int(), d, ctx),
                           gen(TargetTy::Int(), d, ctx));
      }
      case TargetTy::Kind::kIntList:
        if (coin(0.25)) return literal();
        return target::cons(gen(TargetTy::Int(), d, ctx), gen(ty, d, ctx));
      case TargetTy::Kind::kArrow: {
        std::string x = fresh(ctx);
        return target::lam(x, ty.domain(),
                           gen(ty.codomain(), d, ctx.extend(x, ty.domain())));
      }
    }
    return leaf(ty, ctx);
  }

  TargetExpr leaf(const TargetTy& ty, const TypeContext& ctx) {
    auto vars = vars_of(ctx, ty);
    if (!vars.empty() && coin(0.5)) return target::var(vars[pick(vars.size())]);
    switch (ty.kind()) {
      case TargetTy::Kind::kInt:
        return target::int_const(random_int());
      case TargetTy::Kind::kBool:
        return target::bool_const(coin(0.5));
      case TargetTy::Kind::kIntList:
        return coin(0.5) ? target::nil() : literal();
      case TargetTy::Kind::kArrow: {
        std::string x = fresh(ctx);
        return target::lam(x, ty.domain(),
                           leaf(ty.codomain(), ctx.extend(x, ty.domain())));
      }
    }
    return target::nil();
  }

  target::Value random_value(const TargetTy& ty) {
    switch (ty.kind()) {
      case TargetTy::Kind::kInt:
        return target::make_int(random_int());
      case TargetTy::Kind::kBool:
        return target::make_bool(coin(0.5));
      case TargetTy::Kind::kIntList: {
        std::vector<std::int64_t> xs(pick(cfg_.max_list + 1));
        for (auto& x : xs) x = random_int();
        return target::make_list(xs);
      }
      case TargetTy::Kind::kArrow:
        break;
    }
    return target::make_bool(false);
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }
  std::int64_t random_int() {
    return std::uniform_int_distribution<std::int64_t>(cfg_.int_lo,
                                                       cfg_.int_hi)(rng_);
  }

  std::string fresh(const TypeContext& ctx) {
    for (;;) {
      std::string name = "x" + std::to_string(next_name_++);
      if (!ctx.contains(name)) return name;
    }
  }

  TargetExpr literal() {
    std::vector<std::int64_t> xs(1 + pick(cfg_.max_list));
    for (auto& x : xs) x = random_int();
    return target::list_literal(xs);
  }

  TargetTy random_arg_type() {
    switch (std::discrete_distribution<int>({30, 20, 35, 15})(rng_)) {
      case 0:
        return TargetTy::Int();
      case 1:
        return TargetTy::Bool();
      case 2:
        return TargetTy::IntList();
      default:
        return TargetTy::Arrow(TargetTy::Int(), TargetTy::Int());
    }
  }

  TargetExpr gen_case(const TargetTy& ty, std::size_t d,
                      const TypeContext& ctx) {
    TargetExpr scrutinee = gen(TargetTy::IntList(), d, ctx);
    TargetExpr nil_branch = gen(ty, d, ctx);
    std::string x = fresh(ctx);
    std::string xs = fresh(ctx);
    TypeContext inner =
        ctx.extend(x, TargetTy::Int()).extend(xs, TargetTy::IntList());
    return target::case_(scrutinee, nil_branch, x, xs, gen(ty, d, inner));
  }

  TargetExpr gen_fold(const TargetTy& ty, std::size_t d,
                      const TypeContext& ctx) {
    TargetExpr scrutinee = gen(TargetTy::IntList(), d, ctx);
    TargetExpr nil_branch = gen(ty, d, ctx);
    std::string x = fresh(ctx);
    std::string xs = fresh(ctx);
    std::string w = fresh(ctx);
    TypeContext inner = ctx.extend(x, TargetTy::Int())
                            .extend(xs, TargetTy::IntList())
                            .extend(w, ty);
    return target::fold(scrutinee, nil_branch, x, xs, w, gen(ty, d, inner));
  }

  TargetExpr gen_app(const TargetTy& ty, std::size_t d,
                     const TypeContext& ctx) {
    TargetTy arg = random_arg_type();
    TargetExpr fn = gen(TargetTy::Arrow(arg, ty), d, ctx);
    return target::app(fn, gen(arg, d, ctx));
  }

  std::mt19937_64 rng_;
  const ProbeConfig& cfg_;
  std::size_t next_name_ = 0;
};

// ---------------------------------------------------------------------------

using cplx::CplxExpr;
using cplx::CTy;
using cplx::CTypeContext;

class CplxGen {
 public:
  explicit CplxGen(std::mt19937_64& rng) : rng_(rng) {}

  static CTy fn_pot() { return CTy::Arrow(CTy::Nat(), CTy::Prod(CTy::Nat())); }

  CTy random_pot() { return coin(0.7) ? CTy::Nat() : fn_pot(); }

  CplxExpr gen(const CTy& ty, std::size_t depth, const CTypeContext& ctx) {
    if (depth <= 1) return leaf(ty, ctx);
    std::size_t d = depth - 1;
    auto vars = vars_of(ctx, ty);
    if (!vars.empty() && coin(0.2)) return cplx::cvar(vars[pick(vars.size())]);
    if (coin(0.12)) return cplx::max(gen(ty, d, ctx), gen(ty, d, ctx));

    switch (ty.kind()) {
      case CTy::Kind::kNat:
        switch (pick(4)) {
          case 0:
            return cplx::plus(gen(ty, d, ctx), gen(ty, d, ctx));
          case 1:
            return cplx::proj_cost(gen(CTy::Prod(random_pot()), d, ctx));
          case 2:
            return cplx::proj_pot(gen(CTy::Prod(CTy::Nat()), d, ctx));
          default:
            return leaf(ty, ctx);
        }
      case CTy::Kind::kProd: {
        const CTy& pot = ty.first();
        switch (pick(pot.kind() == CTy::Kind::kArrow ? 5 : 4)) {
          case 0:
            return cplx::pair(gen(CTy::Nat(), d, ctx), gen(pot, d, ctx));
          case 1:
            return cplx::star_app(
                gen(CTy::FnComplexity(CTy::Nat(), ty), d, ctx),
                gen(CTy::Prod(CTy::Nat()), d, ctx));
          case 2: {
            std::string p = fresh(ctx), ps = fresh(ctx);
            CTypeContext inner =
                ctx.extend(p, CTy::Nat()).extend(ps, CTy::Nat());
            return cplx::pcase(scrutinee(ctx), gen(ty, d, ctx), p, ps,
                               gen(ty, d, inner));
          }
          case 3: {
            std::string p = fresh(ctx), ps = fresh(ctx), w = fresh(ctx);
            CTypeContext inner = ctx.extend(p, CTy::Nat())
                                     .extend(ps, CTy::Nat())
                                     .extend(w, ty);
            return cplx::pfold(scrutinee(ctx), gen(ty, d, ctx), p, ps, w,
                               gen(ty, d, inner));
          }
          default: {
            std::string x = fresh(ctx);
            return cplx::star_lam(
                x, pot.first(),
                gen(pot.second(), d, ctx.extend(x, CTy::Prod(pot.first()))));
          }
        }
      }
      case CTy::Kind::kArrow:
        return cplx::proj_pot(gen(CTy::Prod(ty), d, ctx));
    }
    return leaf(ty, ctx);
  }

  CplxExpr leaf(const CTy& ty, const CTypeContext& ctx) {
    auto vars = vars_of(ctx, ty);
    if (!vars.empty() && coin(0.5)) return cplx::cvar(vars[pick(vars.size())]);
    switch (ty.kind()) {
      case CTy::Kind::kNat:
        return cplx::nat(pick(6));
      case CTy::Kind::kProd:
        return cplx::pair(cplx::nat(pick(6)), leaf(ty.first(), ctx));
      case CTy::Kind::kArrow: {
        std::string x = fresh(ctx);
        return cplx::proj_pot(cplx::star_lam(
            x, ty.first(),
            leaf(ty.second(), ctx.extend(x, CTy::Prod(ty.first())))));
      }
    }
    return cplx::nat(0);
  }

  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

 private:
  // Small constants or natural-typed variables, which inside a pcase/pfold
  // branch are bounded by the enclosing scrutinee.
  CplxExpr scrutinee(const CTypeContext& ctx) {
    auto vars = vars_of(ctx, CTy::Nat());
    if (!vars.empty() && coin(0.5)) return cplx::cvar(vars[pick(vars.size())]);
    return cplx::nat(pick(5));
  }

  std::string fresh(const CTypeContext& ctx) {
    for (;;) {
      std::string name = "v" + std::to_string(next_name_++);
      if (!ctx.contains(name)) return name;
    }
  }

  std::mt19937_64& rng_;
  std::size_t next_name_ = 0;
};

}  // namespace

TargetExpr gen_typed_term(std::uint64_t seed, std::size_t depth,
                          const TargetTy& ty, const TypeContext& ctx,
                          const ProbeConfig& cfg) {
  return TermGen(seed, cfg).gen(ty, depth, ctx);
}

target::Value random_base_value(std::mt19937_64& rng, const TargetTy& ty,
                                const ProbeConfig& cfg) {
  TermGen g(rng(), cfg);
  return g.random_value(ty);
}

cplx::CplxExpr gen_cplx_term(std::mt19937_64& rng, std::size_t depth,
                             const cplx::CTy& ty,
                             const cplx::CTypeContext& ctx) {
  return CplxGen(rng).gen(ty, depth, ctx);
}

cplx::CTy random_potential_type(std::mt19937_64& rng) {
  return CplxGen(rng).random_pot();
}

}  // namespace costcert::harness
