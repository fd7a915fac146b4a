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

// Empirical soundness checking: cost/potential bound checks against the
// translated program, random well-typed program generation, fuzz campaigns,
// recurrence tabulation, and property checks for the complexity semantics.

#ifndef COSTCERT_HARNESS_H_
#define COSTCERT_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "costcert/cplx.h"
#include "costcert/cplx_sem.h"
#include "costcert/target_eval.h"
#include "costcert/target_syntax.h"

namespace costcert::harness {

struct ProbeConfig {
  // Programs per campaign, and probe arguments per function type.
  std::size_t trials = 100;
  std::size_t max_list = 8;
  std::int64_t int_lo = -9;
  std::int64_t int_hi = 9;
  std::uint64_t seed = 0;
  std::size_t depth = 4;
  std::uint64_t budget = target::kDefaultBudget;

  // Throws std::invalid_argument unless depth, max_list and budget are
  // positive and int_lo <= int_hi.
  void validate() const;
};

enum class Verdict { kPass, kFail, kInconclusive };
std::string_view to_string(Verdict v);

struct Report {
  std::string program;
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t measured_cost = 0;
  std::uint64_t bound_cost = 0;
  // Base-type results only.
  std::optional<std::uint64_t> measured_size;
  cplx::SemVal bound_potential = cplx::SemVal::Nat(0);
  // Function-typed results: number of probe applications checked.
  std::size_t probes = 0;
  Verdict verdict = Verdict::kInconclusive;
  // Counterexample on failure, diagnostic when inconclusive.
  std::string detail;
};

// `trial=<k> seed=<s> cost=<c> bound=<b> size=<z> pot=<p> verdict=<v>`
std::string to_record(const Report& r);
// One JSON object, no trailing newline.
std::string to_json_line(const Report& r);

struct ValueCheck {
  bool ok = true;
  std::size_t probes = 0;
  std::string failure;
};

// Finite approximation of the value bounding relation. Base types compare
// value_size against the potential. At σ -> τ, cfg.trials arguments of type
// σ are generated with known potentials q (base values directly, functions
// as generated closed lambda terms whose potential is their denoted
// translation); the closure body must cost at most pot(q)_c and its result
// must be bounded by pot(q)_p, recursively.
ValueCheck check_value_bounded(const target::Value& v, const cplx::SemVal& pot,
                               const target::TargetTy& ty,
                               const ProbeConfig& cfg);

// One probe of the arrow case: applies `closure` to `arg`, whose potential
// is `arg_pot`, and checks the result against fn_pot(arg_pot).
ValueCheck check_application(const target::Closure& closure,
                             const target::Value& arg,
                             const cplx::SemVal& fn_pot,
                             const cplx::SemVal& arg_pot,
                             const target::TargetTy& result_ty,
                             const ProbeConfig& cfg);

// Checks a closed program of any type against an explicit bound χ: cost of
// evaluation <= χ_c and the value is bounded by χ_p. Budget exhaustion and
// overflow yield kInconclusive.
Report check_against(const target::TargetExpr& e, const cplx::SemVal& bound,
                     const ProbeConfig& cfg);

// check_against with χ = ⟦‖e‖⟧{}. Throws TypeError if e is ill-typed.
Report check_program(const target::TargetExpr& e, const ProbeConfig& cfg);

// check_program restricted to closed programs of base type; throws
// TypeError otherwise.
Report check_closed_base(const target::TargetExpr& e,
                         std::uint64_t budget = target::kDefaultBudget);

// A well-typed term of type `ty` under `ctx`. Recursion is depth-bounded;
// at depth 1 a variable of the right type or a canonical inhabitant
// (constant, nil or short literal, lambda) is produced.
target::TargetExpr gen_typed_term(std::uint64_t seed, std::size_t depth,
                                  const target::TargetTy& ty,
                                  const target::TypeContext& ctx,
                                  const ProbeConfig& cfg);

// Seed of trial k in a campaign seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t k);

// The closed base-type program tested as trial k. Draws whose evaluation
// overflows or exhausts cfg.budget are replaced by a fresh draw, up to a
// fixed number of times.
std::pair<target::TargetExpr, target::TargetTy> trial_program(
    const ProbeConfig& cfg, std::uint64_t k);

struct CampaignSummary {
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t inconclusive = 0;
  // Ordered by trial index.
  std::vector<Report> reports;
};

// Deterministic in cfg. Trials run on up to `threads` worker threads; the
// summary does not depend on the thread count.
CampaignSummary fuzz_campaign(const ProbeConfig& cfg, unsigned threads = 1);

// Per-trial records followed by a summary line.
std::string format_campaign(const CampaignSummary& s, bool json);

// Tabulation of a translated curried program.
struct FixedArg {
  std::uint64_t cost;
  std::uint64_t potential;
};
struct FunctionArg {
  target::TargetExpr term;
};
struct SweepArg {};
using ArgSpec = std::variant<FixedArg, FunctionArg, SweepArg>;

struct BoundRow {
  std::uint64_t n;
  std::uint64_t cost;
  std::uint64_t potential;
};
struct BoundTable {
  std::vector<BoundRow> rows;
};

// For each n in [first, last] (empty when first > last), star-applies
// ⟦‖program‖⟧ to the argument complexities, with the swept argument at
// (1, n) and function arguments at ⟦‖term‖⟧. Throws Error when the program
// is not curried over args, there is not exactly one sweep, or the final
// potential is not a natural.
BoundTable tabulate(const target::TargetExpr& program,
                    std::span<const ArgSpec> args, std::uint64_t first,
                    std::uint64_t last);

std::string format_table(const BoundTable& t, bool json);

struct WorstCase {
  std::uint64_t cost = 0;
  std::string input;
  std::size_t inputs_tried = 0;
};

// Largest evaluation cost of `program` applied to variables bound to
// concrete arguments of the sizes a tabulate row assumes (swept argument of
// size n). Lists of length <= 8 are searched exhaustively over {0,1}
// elements; longer ones use descending and ascending lists.
WorstCase measure_worst_case(const target::TargetExpr& program,
                             std::span<const ArgSpec> args, std::uint64_t n,
                             std::uint64_t budget = target::kDefaultBudget);

// ctypecheck(‖Γ‖, ‖e‖) == ‖typecheck(Γ, e)‖.
bool type_preserved(const target::TargetExpr& e,
                    const target::TypeContext& ctx);

// Random complexity term of type `ty` under `ctx`. Potential types are
// drawn from N and N -> N x N; pcase/pfold scrutinees are small.
cplx::CplxExpr gen_cplx_term(std::mt19937_64& rng, std::size_t depth,
                             const cplx::CTy& ty,
                             const cplx::CTypeContext& ctx);

struct PropertySummary {
  std::size_t samples = 0;
  std::size_t passed = 0;
  std::vector<std::string> failures;
  bool ok() const { return passed == samples; }
};

// cost(⟦s⟧) <= cost(⟦pfold r of (s, [p,ps,w] t)⟧) for random typechecked
// pfold terms with scrutinee 0..8.
PropertySummary check_pfold_base(std::size_t samples, std::uint64_t seed);

// ⟦t⟧ env[x ↦ (a,b)] = ⟦t[x ↦ (a,y)]⟧ env[y ↦ b] for fresh y. Compared
// exactly at first-order result types and on `probes` arguments otherwise.
PropertySummary check_subst_denote(std::size_t samples, std::uint64_t seed,
                             std::size_t probes = 10);

// A program that passes against χ also passes against max(χ, χ') for a
// random χ' of the same shape.
PropertySummary check_bound_max(const ProbeConfig& cfg);

}  // namespace costcert::harness

#endif  // COSTCERT_HARNESS_H_
