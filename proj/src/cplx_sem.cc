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

#include "costcert/cplx_sem.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "costcert/error.h"

namespace costcert::cplx {

SemVal SemVal::Nat(std::uint64_t n) {
  SemVal v;
  v.kind_ = Kind::kNat;
  v.n_ = n;
  return v;
}

SemVal SemVal::Pair(std::uint64_t cost, SemVal pot) {
  SemVal v;
  v.kind_ = Kind::kPair;
  v.n_ = cost;
  v.pot_ = std::make_shared<const SemVal>(std::move(pot));
  return v;
}

SemVal SemVal::Fun(PotentialFn fn) {
  SemVal v;
  v.kind_ = Kind::kFun;
  v.fn_ = std::make_shared<const PotentialFn>(std::move(fn));
  return v;
}

std::uint64_t SemVal::nat() const {
  if (!is_nat()) throw EvalError("internal error: expected a natural, found " + to_string(*this));
  return n_;
}

std::uint64_t SemVal::cost() const {
  if (!is_pair()) throw EvalError("internal error: expected a complexity, found " + to_string(*this));
  return n_;
}

const SemVal& SemVal::pot() const {
  if (!is_pair()) throw EvalError("internal error: expected a complexity, found " + to_string(*this));
  return *pot_;
}

SemVal SemVal::operator()(const SemVal& arg) const {
  if (!is_fun()) throw EvalError("internal error: applying " + to_string(*this));
  return (*fn_)(arg);
}

std::string to_string(const SemVal& v) {
  if (v.is_nat()) return std::to_string(v.nat());
  if (v.is_pair()) {
    return "(" + std::to_string(v.cost()) + ", " + to_string(v.pot()) + ")";
  }
  return "<fun>";
}

std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw ArithmeticOverflow("natural-number overflow in " + std::to_string(a) +
                             " + " + std::to_string(b));
  }
  return out;
}

SemVal sem_max(const SemVal& a, const SemVal& b) {
  if (a.is_nat() && b.is_nat()) return SemVal::Nat(std::max(a.nat(), b.nat()));
  if (a.is_pair() && b.is_pair()) {
    return SemVal::Pair(std::max(a.cost(), b.cost()), sem_max(a.pot(), b.pot()));
  }
  if (a.is_fun() && b.is_fun()) {
    return SemVal::Fun([a, b](const SemVal& p) { return sem_max(a(p), b(p)); });
  }
  throw EvalError("internal error: max of mismatched shapes " + to_string(a) +
                  " and " + to_string(b));
}

SemVal dally(std::uint64_t n, const SemVal& c) {
  return SemVal::Pair(add(n, c.cost()), c.pot());
}

SemVal star_apply(const SemVal& f, const SemVal& a) {
  return dally(add(add(1, f.cost()), a.cost()), f.pot()(a.pot()));
}

namespace {

// Translated terms project the same subterm twice (r_c and r_p); results
// of projected subterms are shared per environment within one call.
class Denoter {
 public:
  SemVal run(const CplxExpr& e, const SemEnv& env) {
    return std::visit([&](const auto& n) { return eval(n, env); }, e->node);
  }

 private:
  struct Entry {
    SemEnv env;  // keeps the identity in the key alive
    SemVal value;
  };
  using Key = std::pair<const CNode*, const void*>;

  // Variables, constants and pairs of them.
  static bool trivial(const CplxExpr& e) {
    if (const auto* p = std::get_if<Pair>(&e->node)) {
      return trivial(p->cost) && trivial(p->pot);
    }
    return std::holds_alternative<CVar>(e->node) ||
           std::holds_alternative<NatConst>(e->node);
  }

  SemVal shared(const CplxExpr& e, const SemEnv& env) {
    if (trivial(e)) return run(e, env);
    Key key{e.get(), env.identity()};
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      SemVal v = run(e, env);
      it = cache_.emplace(key, Entry{env, std::move(v)}).first;
    }
    return it->second.value;
  }

  SemVal eval(const CVar& n, const SemEnv& env) {
    const SemVal* v = env.find(n.name);
    if (v == nullptr) throw EvalError("unbound complexity variable `" + n.name + "`");
    return *v;
  }
  SemVal eval(const NatConst& n, const SemEnv&) { return SemVal::Nat(n.value); }
  SemVal eval(const Plus& n, const SemEnv& env) {
    return SemVal::Nat(add(run(n.lhs, env).nat(), run(n.rhs, env).nat()));
  }
  SemVal eval(const Max& n, const SemEnv& env) {
    return sem_max(run(n.lhs, env), run(n.rhs, env));
  }
  SemVal eval(const Pair& n, const SemEnv& env) {
    CplxExpr amount, inner;
    if (as_dally(n, &amount, &inner)) {
      return dally(run(amount, env).nat(), run(inner, env));
    }
    return SemVal::Pair(run(n.cost, env).nat(), run(n.pot, env));
  }
  SemVal eval(const ProjCost& n, const SemEnv& env) {
    return SemVal::Nat(shared(n.e, env).cost());
  }
  SemVal eval(const ProjPot& n, const SemEnv& env) {
    return shared(n.e, env).pot();
  }
  SemVal eval(const StarLam& n, const SemEnv& env) {
    // (1, p ↦ ⟦body⟧ env[x ↦ (1, p)])
    return SemVal::Pair(
        1, SemVal::Fun([binder = n.binder, body = n.body, env](const SemVal& p) {
          return denote(body, env.extend(binder, SemVal::Pair(1, p)));
        }));
  }
  SemVal eval(const StarApp& n, const SemEnv& env) {
    SemVal f = run(n.fn, env);
    SemVal a = run(n.arg, env);
    return star_apply(f, a);
  }
  SemVal eval(const PCase& n, const SemEnv& env) {
    std::uint64_t q = run(n.scrutinee, env).nat();
    SemVal zero = run(n.zero, env);
    if (q == 0) return zero;
    SemEnv inner = env.extend(n.p, SemVal::Nat(1)).extend(n.ps, SemVal::Nat(q - 1));
    return sem_max(zero, run(n.succ, inner));
  }
  SemVal eval(const PFold& n, const SemEnv& env) {
    // Bottom-up over the scrutinee: rec holds the denotation at i.
    std::uint64_t q = run(n.scrutinee, env).nat();
    SemVal zero = run(n.zero, env);
    SemVal rec = zero;
    for (std::uint64_t i = 0; i < q; ++i) {
      SemEnv inner = env.extend(n.p, SemVal::Nat(1))
                         .extend(n.ps, SemVal::Nat(i))
                         .extend(n.w, SemVal::Pair(1, rec.pot()));
      SemVal step = run(n.succ, inner);
      rec = SemVal::Pair(add(add(2, rec.cost()), step.cost()),
                         sem_max(zero.pot(), step.pot()));
    }
    return rec;
  }

  std::map<Key, Entry> cache_;
};

}  // namespace

SemVal denote(const CplxExpr& e, const SemEnv& env) {
  return Denoter().run(e, env);
}

// ---------------------------------------------------------------------------
// Probing

namespace {

std::uint64_t weight(const SemVal& v) { return v.is_nat() ? v.nat() : 0; }

// A deterministic inhabitant of `ty` indexed by k. Functions are affine in
// natural arguments so that distinct probes see distinct results.
SemVal inhabitant(const CTy& ty, std::uint64_t k) {
  switch (ty.kind()) {
    case CTy::Kind::kNat:
      return SemVal::Nat(k);
    case CTy::Kind::kProd:
      return SemVal::Pair(k, inhabitant(ty.first(), k));
    case CTy::Kind::kArrow:
      return SemVal::Fun([cod = ty.second(), k](const SemVal& arg) {
        return inhabitant(cod, k + weight(arg));
      });
  }
  return SemVal::Nat(0);
}

template <typename Cmp>
bool probe_compare(const SemVal& a, const SemVal& b, const CTy& ty,
                   std::size_t probes, Cmp cmp) {
  switch (ty.kind()) {
    case CTy::Kind::kNat:
      return cmp(a.nat(), b.nat());
    case CTy::Kind::kProd:
      return cmp(a.cost(), b.cost()) &&
             probe_compare(a.pot(), b.pot(), ty.first(), probes, cmp);
    case CTy::Kind::kArrow:
      for (const SemVal& q : probe_potentials(ty.first(), probes)) {
        if (!probe_compare(a(q), b(q), ty.second(), probes, cmp)) return false;
      }
      return true;
  }
  return false;
}

}  // namespace

std::vector<SemVal> probe_potentials(const CTy& potential, std::size_t n) {
  std::vector<SemVal> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(inhabitant(potential, i));
  return out;
}

bool probe_equal(const SemVal& a, const SemVal& b, const CTy& ty,
                 std::size_t probes) {
  return probe_compare(a, b, ty, probes,
                       [](std::uint64_t x, std::uint64_t y) { return x == y; });
}

bool probe_leq(const SemVal& a, const SemVal& b, const CTy& ty,
               std::size_t probes) {
  return probe_compare(a, b, ty, probes,
                       [](std::uint64_t x, std::uint64_t y) { return x <= y; });
}

}  // namespace costcert::cplx
