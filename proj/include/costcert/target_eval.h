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

// Big-step call-by-value evaluation with derivation-size cost.

#ifndef COSTCERT_TARGET_EVAL_H_
#define COSTCERT_TARGET_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "costcert/env.h"
#include "costcert/target_syntax.h"

namespace costcert::target {

// Immutable integer list with O(1) head/tail sharing.
class IntList {
 public:
  IntList() = default;
  static IntList from(std::span<const std::int64_t> elements);

  IntList prepend(std::int64_t head) const;
  bool empty() const { return cell_ == nullptr; }
  std::size_t size() const { return cell_ ? cell_->size : 0; }
  // Precondition: !empty().
  std::int64_t head() const { return cell_->head; }
  IntList tail() const;

  std::vector<std::int64_t> to_vector() const;
  friend bool operator==(const IntList& a, const IntList& b);

 private:
  struct Cell {
    std::int64_t head;
    std::size_t size;
    std::shared_ptr<const Cell> tail;
  };
  explicit IntList(std::shared_ptr<const Cell> cell) : cell_(std::move(cell)) {}
  std::shared_ptr<const Cell> cell_;
};

struct Value;
using ValueEnv = Env<Value>;

struct Closure {
  std::string binder;
  TargetExpr body;
  ValueEnv env;
};

// Base-type values carry no environment; only closures capture one.
struct Value {
  std::variant<bool, std::int64_t, IntList, Closure> v;

  bool is_bool() const { return std::holds_alternative<bool>(v); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(v); }
  bool is_list() const { return std::holds_alternative<IntList>(v); }
  bool is_closure() const { return std::holds_alternative<Closure>(v); }
};

Value make_bool(bool b);
Value make_int(std::int64_t n);
Value make_list(IntList xs);
Value make_list(std::span<const std::int64_t> xs);

// `true`, `-3`, `[1,2]`, `<closure \x>`.
std::string to_string(const Value& v);

// Structural equality on base values; closures compare by identity of body
// and binder only.
bool same_base_value(const Value& a, const Value& b);

struct EvalResult {
  Value value;
  std::uint64_t cost;
};

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

// Every inference-rule instance costs 1; the arithmetic side condition of
// relation and operator rules costs 1 more. A non-empty fold binds the tail
// to a fresh `$foldN` variable, so each recursive unrolling pays 1 for the
// lookup instead of re-evaluating the scrutinee.
//
// Throws EvalError (unbound variable, dynamic type confusion),
// BudgetExhausted (cost would exceed `budget`), ArithmeticOverflow.
EvalResult eval(const TargetExpr& e, const ValueEnv& env,
                std::uint64_t budget = kDefaultBudget);

// Evaluates the body of `closure` with its binder bound to `arg`, i.e. the
// third premise of the application rule.
EvalResult eval_body(const Closure& closure, const Value& arg,
                     std::uint64_t budget = kDefaultBudget);

// Size of a base-type value: 1 for integers and booleans, length for lists.
// Throws EvalError at arrow type or when `v` does not match `ty`.
std::uint64_t value_size(const Value& v, const TargetTy& ty);

}  // namespace costcert::target

#endif  // COSTCERT_TARGET_EVAL_H_
