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

// Denotational semantics of complexity terms.

#ifndef COSTCERT_CPLX_SEM_H_
#define COSTCERT_CPLX_SEM_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>

#include "costcert/cplx.h"
#include "costcert/env.h"

namespace costcert::cplx {

class SemVal;
using PotentialFn = std::function<SemVal(const SemVal&)>;

// A natural, a (cost, potential) pair, or a potential function mapping an
// argument potential to a result complexity. Immutable and shareable.
class SemVal {
 public:
  static SemVal Nat(std::uint64_t n);
  static SemVal Pair(std::uint64_t cost, SemVal pot);
  static SemVal Fun(PotentialFn fn);

  bool is_nat() const { return kind_ == Kind::kNat; }
  bool is_pair() const { return kind_ == Kind::kPair; }
  bool is_fun() const { return kind_ == Kind::kFun; }

  // Throw EvalError on shape mismatch.
  std::uint64_t nat() const;
  std::uint64_t cost() const;
  const SemVal& pot() const;
  SemVal operator()(const SemVal& arg) const;

 private:
  enum class Kind { kNat, kPair, kFun };
  SemVal() = default;

  Kind kind_ = Kind::kNat;
  std::uint64_t n_ = 0;  // the natural, or the cost of a pair
  std::shared_ptr<const SemVal> pot_;
  std::shared_ptr<const PotentialFn> fn_;
};

// `5`, `(4, 5)`, `<fun>`.
std::string to_string(const SemVal& v);

using SemEnv = Env<SemVal>;

// Throws EvalError on shape mismatch or unbound variable, ArithmeticOverflow
// when a natural leaves 64 bits.
SemVal denote(const CplxExpr& e, const SemEnv& env);

// Numeric max on naturals, componentwise on pairs, pointwise (lazily) on
// potential functions.
SemVal sem_max(const SemVal& a, const SemVal& b);

// (n + cost, pot).
SemVal dally(std::uint64_t n, const SemVal& c);

// Semantics of `f * a` on complexities:
// dally(1 + f_c + a_c, f_p(a_p)).
SemVal star_apply(const SemVal& f, const SemVal& a);

// Checked natural addition.
std::uint64_t add(std::uint64_t a, std::uint64_t b);

// Deterministic probe arguments for a potential type: naturals 0..n-1 at N,
// and constant-cost, affine-potential functions at arrow types.
std::vector<SemVal> probe_potentials(const CTy& potential, std::size_t n);

// Equality of denotations of type `ty`: exact at first-order shapes, by
// applying both sides to `probes` arguments at function shapes.
bool probe_equal(const SemVal& a, const SemVal& b, const CTy& ty,
                 std::size_t probes);

// a <= b: componentwise at pairs, probe-wise at functions.
bool probe_leq(const SemVal& a, const SemVal& b, const CTy& ty,
               std::size_t probes);

}  // namespace costcert::cplx

#endif  // COSTCERT_CPLX_SEM_H_
