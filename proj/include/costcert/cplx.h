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

// The complexity language: expressions over naturals, cost/potential pairs,
// potential functions, and the `pcase`/`pfold` recurrence formers.

#ifndef COSTCERT_CPLX_H_
#define COSTCERT_CPLX_H_

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <variant>

#include "costcert/env.h"

namespace costcert::cplx {

// Types of complexity expressions. Potential types are N and γ -> τ;
// complexity types are N × γ (written ⟨⟨γ⟩⟩). A bare N also types the cost
// component and natural-valued subterms.
class CTy {
 public:
  enum class Kind { kNat, kProd, kArrow };

  static CTy Nat() { return CTy(Kind::kNat); }
  // N × potential. Precondition: potential.is_potential().
  static CTy Prod(CTy potential);
  // potential -> complexity, a potential type.
  static CTy Arrow(CTy domain, CTy codomain);
  // γ ⇒ τ, i.e. ⟨⟨γ -> τ⟩⟩.
  static CTy FnComplexity(CTy domain, CTy codomain) {
    return Prod(Arrow(std::move(domain), std::move(codomain)));
  }

  Kind kind() const { return kind_; }
  bool is_nat() const { return kind_ == Kind::kNat; }
  bool is_potential() const { return kind_ != Kind::kProd; }
  bool is_complexity() const { return kind_ == Kind::kProd; }

  // kProd: the potential component. kArrow: the domain.
  const CTy& first() const { return kids_->first; }
  // kArrow: the codomain.
  const CTy& second() const { return kids_->second; }

  friend bool operator==(const CTy& a, const CTy& b);

 private:
  explicit CTy(Kind kind) : kind_(kind) {}
  Kind kind_;
  std::shared_ptr<const std::pair<CTy, CTy>> kids_;
};

// `N`, `N x N`, `N -> N x N`; × binds tighter than ->.
std::string to_string(const CTy& ty);

struct CNode;
using CplxExpr = std::shared_ptr<const CNode>;

struct CVar {
  std::string name;
};
struct NatConst {
  std::uint64_t value;
};
struct Plus {
  CplxExpr lhs;
  CplxExpr rhs;
};
struct Max {
  CplxExpr lhs;
  CplxExpr rhs;
};
struct Pair {
  CplxExpr cost;
  CplxExpr pot;
};
struct ProjCost {
  CplxExpr e;
};
struct ProjPot {
  CplxExpr e;
};
// λ_* binder:⟨⟨binder_pot⟩⟩. body
struct StarLam {
  std::string binder;
  CTy binder_pot;
  CplxExpr body;
};
struct StarApp {
  CplxExpr fn;
  CplxExpr arg;
};
struct PCase {
  CplxExpr scrutinee;
  CplxExpr zero;
  std::string p;
  std::string ps;
  CplxExpr succ;
};
struct PFold {
  CplxExpr scrutinee;
  CplxExpr zero;
  std::string p;
  std::string ps;
  std::string w;
  CplxExpr succ;
};

struct CNode {
  std::variant<CVar, NatConst, Plus, Max, Pair, ProjCost, ProjPot, StarLam,
               StarApp, PCase, PFold>
      node;
};

CplxExpr cvar(std::string name);
CplxExpr nat(std::uint64_t value);
CplxExpr plus(CplxExpr lhs, CplxExpr rhs);
CplxExpr max(CplxExpr lhs, CplxExpr rhs);
CplxExpr pair(CplxExpr cost, CplxExpr pot);
CplxExpr proj_cost(CplxExpr e);
CplxExpr proj_pot(CplxExpr e);
CplxExpr star_lam(std::string binder, CTy binder_pot, CplxExpr body);
CplxExpr star_app(CplxExpr fn, CplxExpr arg);
CplxExpr pcase(CplxExpr scrutinee, CplxExpr zero, std::string p,
               std::string ps, CplxExpr succ);
CplxExpr pfold(CplxExpr scrutinee, CplxExpr zero, std::string p,
               std::string ps, std::string w, CplxExpr succ);

// dally(n, e) = (n + e_c, e_p). The language has no dally former; the two
// projections share the same `e` node, which print() recognizes.
CplxExpr dally(CplxExpr n, const CplxExpr& e);
// Recognizes the shared-node form built by dally().
bool as_dally(const Pair& p, CplxExpr* n, CplxExpr* e);

using CTypeContext = Env<CTy>;

// Throws TypeError.
CTy ctypecheck(const CTypeContext& ctx, const CplxExpr& e);

std::set<std::string> free_vars(const CplxExpr& e);

// Structural equality, binder names included.
bool syntactically_equal(const CplxExpr& a, const CplxExpr& b);

// `pfold e of (e, [p, ps, w] e)`, `e_c`, `e_p`, `max(a, b)`, `\*x:γ. e`,
// `f * a`, and `dally(n, e)` for the shared-node pattern built by dally().
std::string print(const CplxExpr& e);

}  // namespace costcert::cplx

#endif  // COSTCERT_CPLX_H_
