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

#include "costcert/error.h"
#include "costcert/harness.h"
#include "costcert/translate.h"
#include "harness_internal.h"

namespace costcert::harness {

using cplx::CTy;
using cplx::CplxExpr;
using cplx::SemVal;

namespace {

constexpr std::size_t kTermDepth = 4;
// Draws whose denotation overflows are redrawn, up to this many times per
// sample.
constexpr int kRedraws = 64;

// A potential of type `ty` for an environment entry.
SemVal random_potential(std::mt19937_64& rng, const CTy& ty) {
  if (ty.is_nat()) return SemVal::Nat(rng() % 10);
  auto probes = cplx::probe_potentials(ty, 4);
  return probes[rng() % probes.size()];
}

std::string fresh_like(const std::string& base, const CplxExpr& avoid) {
  auto fv = cplx::free_vars(avoid);
  for (int i = 0;; ++i) {
    std::string name = base + std::to_string(i);
    if (!fv.contains(name)) return name;
  }
}

}  // namespace

PropertySummary check_pfold_base(std::size_t samples, std::uint64_t seed) {
  PropertySummary out;
  std::mt19937_64 rng(trial_seed(seed, 4));
  for (std::size_t i = 0; i < samples; ++i) {
    ++out.samples;
    bool done = false;
    for (int attempt = 0; attempt < kRedraws && !done; ++attempt) {
      CTy tau = CTy::Prod(random_potential_type(rng));
      cplx::CTypeContext ctx;
      CplxExpr s = gen_cplx_term(rng, kTermDepth, tau, ctx);
      CplxExpr t = gen_cplx_term(
          rng, kTermDepth, tau,
          ctx.extend("p", CTy::Nat()).extend("ps", CTy::Nat()).extend("w", tau));
      std::uint64_t r = rng() % 9;
      CplxExpr whole = cplx::pfold(cplx::nat(r), s, "p", "ps", "w", t);
      try {
        cplx::ctypecheck(ctx, whole);
        std::uint64_t base = cplx::denote(s, {}).cost();
        std::uint64_t folded = cplx::denote(whole, {}).cost();
        done = true;
        if (base <= folded && (r != 0 || base == folded)) {
          ++out.passed;
        } else {
          out.failures.push_back(cplx::print(whole) + ": " +
                                 std::to_string(base) + " vs " +
                                 std::to_string(folded));
        }
      } catch (const ArithmeticOverflow&) {
      }
    }
    if (!done) out.failures.push_back("no overflow-free draw");
  }
  return out;
}

PropertySummary check_subst_denote(std::size_t samples, std::uint64_t seed,
                             std::size_t probes) {
  PropertySummary out;
  std::mt19937_64 rng(trial_seed(seed, 3));
  // `samples` terms with a first-order result, then one function-valued
  // term for every five of those.
  std::size_t total = samples + samples / 5;
  for (std::size_t i = 0; i < total; ++i) {
    ++out.samples;
    bool first_order = i < samples;
    bool done = false;
    for (int attempt = 0; attempt < kRedraws && !done; ++attempt) {
      CTy gamma = random_potential_type(rng);
      CTy result_pot = first_order ? CTy::Nat() : random_potential_type(rng);
      if (!first_order && result_pot.is_nat()) {
        result_pot = CTy::Arrow(CTy::Nat(), CTy::Prod(CTy::Nat()));
      }
      CTy tau = CTy::Prod(result_pot);
      cplx::CTypeContext ctx =
          cplx::CTypeContext{}.extend("x", CTy::Prod(gamma));
      CplxExpr t = gen_cplx_term(rng, kTermDepth, tau, ctx);
      std::uint64_t a = rng() % 10;
      SemVal b = random_potential(rng, gamma);
      std::string y = fresh_like("y", t);
      CplxExpr t2 = translate::subst(
          t, {{"x", cplx::pair(cplx::nat(a), cplx::cvar(y))}});
      try {
        SemVal lhs =
            cplx::denote(t, cplx::SemEnv{}.extend("x", SemVal::Pair(a, b)));
        SemVal rhs = cplx::denote(t2, cplx::SemEnv{}.extend(y, b));
        bool same = cplx::probe_equal(lhs, rhs, tau, probes);
        done = true;
        if (same) {
          ++out.passed;
        } else {
          out.failures.push_back(cplx::print(t) + " with x = (" +
                                 std::to_string(a) + ", " +
                                 cplx::to_string(b) + ")");
        }
      } catch (const ArithmeticOverflow&) {
      }
    }
    if (!done) out.failures.push_back("no overflow-free draw");
  }
  return out;
}

PropertySummary check_bound_max(const ProbeConfig& cfg) {
  cfg.validate();
  PropertySummary out;
  std::mt19937_64 rng(trial_seed(cfg.seed, 1));
  for (std::size_t k = 0; k < cfg.trials; ++k) {
    auto [program, ty] = trial_program(cfg, k);
    Report base = check_program(program, cfg);
    if (base.verdict != Verdict::kPass) continue;
    ++out.samples;
    SemVal chi = SemVal::Pair(base.bound_cost, base.bound_potential);
    SemVal other = SemVal::Pair(rng() % 64, SemVal::Nat(rng() % 16));
    Report maxed = check_against(program, cplx::sem_max(chi, other), cfg);
    if (maxed.verdict == Verdict::kPass) {
      ++out.passed;
    } else {
      out.failures.push_back("trial " + std::to_string(k) + ": " +
                             maxed.detail);
    }
  }
  return out;
}

}  // namespace costcert::harness
