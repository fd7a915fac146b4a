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

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "costcert/error.h"
#include "costcert/harness.h"
#include "costcert/translate.h"
#include "harness_internal.h"

namespace costcert::harness {

using cplx::SemVal;
using target::TargetExpr;
using target::TargetTy;
using target::Value;

void ProbeConfig::validate() const {
  if (depth == 0) throw std::invalid_argument("depth must be positive");
  if (max_list == 0) throw std::invalid_argument("max list length must be positive");
  if (budget == 0) throw std::invalid_argument("budget must be positive");
  if (int_lo > int_hi) throw std::invalid_argument("empty integer range");
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string to_record(const Report& r) {
  std::ostringstream out;
  out << "trial=" << r.trial << " seed=" << r.seed
      << " cost=" << r.measured_cost << " bound=" << r.bound_cost << " size=";
  if (r.measured_size) {
    out << *r.measured_size;
  } else {
    out << '-';
  }
  out << " pot=" << cplx::to_string(r.bound_potential)
      << " verdict=" << to_string(r.verdict);
  return out.str();
}

std::string to_json_line(const Report& r) {
  nlohmann::ordered_json j;
  j["trial"] = r.trial;
  j["seed"] = r.seed;
  if (!r.program.empty()) j["program"] = r.program;
  j["cost"] = r.measured_cost;
  j["bound"] = r.bound_cost;
  if (r.measured_size) {
    j["size"] = *r.measured_size;
  } else {
    j["size"] = nullptr;
    j["probes"] = r.probes;
  }
  j["pot"] = cplx::to_string(r.bound_potential);
  j["verdict"] = to_string(r.verdict);
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j.dump();
}

// ---------------------------------------------------------------------------
// Value bounding

namespace {

class ValueChecker {
 public:
  explicit ValueChecker(const ProbeConfig& cfg)
      : cfg_(cfg), rng_(trial_seed(cfg.seed, 0x70726f6265)) {}

  ValueCheck bounded(const Value& v, const SemVal& pot, const TargetTy& ty) {
    ValueCheck out;
    if (ty.is_base()) {
      std::uint64_t size = target::value_size(v, ty);
      if (!pot.is_nat()) {
        fail(out, "potential " + cplx::to_string(pot) + " is not a natural");
      } else if (size > pot.nat()) {
        fail(out, "value " + target::to_string(v) + " of size " +
                      std::to_string(size) + " exceeds potential " +
                      std::to_string(pot.nat()));
      }
      return out;
    }
    if (!v.is_closure()) {
      fail(out, "expected a closure at " + target::to_string(ty));
      return out;
    }
    const auto& closure = std::get<target::Closure>(v.v);
    for (std::size_t i = 0; i < cfg_.trials && out.ok; ++i) {
      auto [arg, arg_pot, shown] = probe_argument(ty.domain());
      ValueCheck one = apply(closure, arg, pot, arg_pot, ty.codomain());
      out.probes += one.probes;
      if (!one.ok) fail(out, "at argument " + shown + ": " + one.failure);
    }
    return out;
  }

  ValueCheck apply(const target::Closure& closure, const Value& arg,
                   const SemVal& fn_pot, const SemVal& arg_pot,
                   const TargetTy& result_ty) {
    ValueCheck out;
    out.probes = 1;
    target::EvalResult r = target::eval_body(closure, arg, cfg_.budget);
    SemVal chi = fn_pot(arg_pot);
    if (r.cost > chi.cost()) {
      fail(out, "application cost " + std::to_string(r.cost) +
                    " exceeds bound " + std::to_string(chi.cost()));
      return out;
    }
    ValueCheck rest = bounded(r.value, chi.pot(), result_ty);
    out.probes += rest.probes;
    if (!rest.ok) fail(out, rest.failure);
    return out;
  }

 private:
  static void fail(ValueCheck& c, std::string why) {
    c.ok = false;
    c.failure = std::move(why);
  }

  struct Probe {
    Value value;
    SemVal pot;
    std::string shown;
  };

  // A value of type `ty` together with a potential that bounds it.
  Probe probe_argument(const TargetTy& ty) {
    if (ty.is_base()) {
      Value v = random_base_value(rng_, ty, cfg_);
      return {v, SemVal::Nat(target::value_size(v, ty)), target::to_string(v)};
    }
    TargetExpr term = gen_typed_term(rng_(), cfg_.depth, ty, {}, cfg_);
    Value v = target::eval(term, {}, cfg_.budget).value;
    SemVal chi = cplx::denote(translate::translate(term), {});
    return {v, chi.pot(), target::print(term)};
  }

  const ProbeConfig& cfg_;
  std::mt19937_64 rng_;
};

}  // namespace

ValueCheck check_value_bounded(const Value& v, const SemVal& pot,
                               const TargetTy& ty, const ProbeConfig& cfg) {
  return ValueChecker(cfg).bounded(v, pot, ty);
}

ValueCheck check_application(const target::Closure& closure, const Value& arg,
                             const SemVal& fn_pot, const SemVal& arg_pot,
                             const TargetTy& result_ty,
                             const ProbeConfig& cfg) {
  return ValueChecker(cfg).apply(closure, arg, fn_pot, arg_pot, result_ty);
}

Report check_against(const TargetExpr& e, const SemVal& bound,
                     const ProbeConfig& cfg) {
  TargetTy ty = target::typecheck({}, e);
  Report r;
  try {
    r.bound_cost = bound.cost();
    r.bound_potential = bound.pot();
    target::EvalResult run = target::eval(e, {}, cfg.budget);
    r.measured_cost = run.cost;
    bool cost_ok = run.cost <= r.bound_cost;
    ValueCheck vc;
    if (ty.is_base()) {
      r.measured_size = target::value_size(run.value, ty);
      vc = check_value_bounded(run.value, r.bound_potential, ty, cfg);
    } else {
      vc = check_value_bounded(run.value, r.bound_potential, ty, cfg);
      r.probes = vc.probes;
    }
    r.verdict = cost_ok && vc.ok ? Verdict::kPass : Verdict::kFail;
    if (!cost_ok) {
      r.detail = "cost " + std::to_string(run.cost) + " exceeds bound " +
                 std::to_string(r.bound_cost);
    } else if (!vc.ok) {
      r.detail = vc.failure;
    }
    if (r.verdict == Verdict::kFail) r.detail += " in `" + target::print(e) + "`";
  } catch (const BudgetExhausted& ex) {
    r.verdict = Verdict::kInconclusive;
    r.detail = ex.what();
  } catch (const ArithmeticOverflow& ex) {
    r.verdict = Verdict::kInconclusive;
    r.detail = ex.what();
  }
  return r;
}

Report check_program(const TargetExpr& e, const ProbeConfig& cfg) {
  target::typecheck({}, e);
  SemVal bound = SemVal::Nat(0);
  try {
    bound = cplx::denote(translate::translate(e), {});
  } catch (const ArithmeticOverflow& ex) {
    Report r;
    r.verdict = Verdict::kInconclusive;
    r.detail = ex.what();
    return r;
  }
  return check_against(e, bound, cfg);
}

Report check_closed_base(const TargetExpr& e, std::uint64_t budget) {
  TargetTy ty = target::typecheck({}, e);
  if (!ty.is_base()) {
    throw TypeError("expected a program of base type, found " +
                    target::to_string(ty));
  }
  ProbeConfig cfg;
  cfg.budget = budget;
  return check_program(e, cfg);
}

bool type_preserved(const TargetExpr& e, const target::TypeContext& ctx) {
  TargetTy ty = target::typecheck(ctx, e);
  try {
    cplx::CTy got = cplx::ctypecheck(translate::translate_ctx(ctx),
                                     translate::translate(e));
    return got == translate::translate_ty(ty);
  } catch (const TypeError&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Campaigns

constexpr int kProgramRedraws = 16;

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t k) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(k),
                    static_cast<std::uint32_t>(k >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::pair<TargetExpr, TargetTy> trial_program(const ProbeConfig& cfg,
                                              std::uint64_t k) {
  static const TargetTy kTypes[] = {TargetTy::Int(), TargetTy::Bool(),
                                    TargetTy::IntList()};
  std::mt19937_64 rng(trial_seed(cfg.seed, k));
  const TargetTy& ty = kTypes[rng() % 3];
  // Programs whose 64-bit evaluation overflows or exceeds the budget are
  // redrawn; the last draw is kept if none succeeds.
  TargetExpr e;
  for (int draw = 0; draw < kProgramRedraws; ++draw) {
    e = gen_typed_term(rng(), cfg.depth, ty, {}, cfg);
    try {
      target::eval(e, {}, cfg.budget);
      break;
    } catch (const BudgetExhausted&) {
    } catch (const ArithmeticOverflow&) {
    }
  }
  return {e, ty};
}

CampaignSummary fuzz_campaign(const ProbeConfig& cfg, unsigned threads) {
  cfg.validate();
  CampaignSummary s;
  s.trials = cfg.trials;
  s.reports.resize(cfg.trials);
  auto run_trial = [&](std::size_t k) {
    auto [program, ty] = trial_program(cfg, k);
    Report r = check_program(program, cfg);
    r.program = target::print(program);
    r.trial = k;
    r.seed = trial_seed(cfg.seed, k);
    s.reports[k] = std::move(r);
  };
  threads = std::max(1u, std::min<unsigned>(threads, cfg.trials));
  if (threads <= 1) {
    for (std::size_t k = 0; k < cfg.trials; ++k) run_trial(k);
  } else {
    // Strided assignment; each worker writes only its own slots.
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t k = t; k < cfg.trials; k += threads) run_trial(k);
      });
    }
  }
  for (const Report& r : s.reports) {
    switch (r.verdict) {
      case Verdict::kPass:
        ++s.passed;
        break;
      case Verdict::kFail:
        ++s.failed;
        break;
      case Verdict::kInconclusive:
        ++s.inconclusive;
        break;
    }
  }
  return s;
}

std::string format_campaign(const CampaignSummary& s, bool json) {
  std::ostringstream out;
  for (const Report& r : s.reports) {
    out << (json ? to_json_line(r) : to_record(r)) << '\n';
  }
  if (json) {
    nlohmann::ordered_json j;
    j["trials"] = s.trials;
    j["pass"] = s.passed;
    j["fail"] = s.failed;
    j["inconclusive"] = s.inconclusive;
    out << nlohmann::ordered_json{{"summary", j}}.dump() << '\n';
  } else {
    out << "summary trials=" << s.trials << " pass=" << s.passed
        << " fail=" << s.failed << " inconclusive=" << s.inconclusive << '\n';
  }
  for (const Report& r : s.reports) {
    if (r.verdict == Verdict::kPass || json) continue;
    out << "trial " << r.trial << ": " << to_string(r.verdict) << ": "
        << r.detail << '\n';
  }
  return out.str();
}

}  // namespace costcert::harness
