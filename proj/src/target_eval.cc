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

#include "costcert/target_eval.h"

#include <sstream>

#include "costcert/error.h"

namespace costcert::target {

IntList IntList::from(std::span<const std::int64_t> elements) {
  IntList out;
  for (auto it = elements.rbegin(); it != elements.rend(); ++it) {
    out = out.prepend(*it);
  }
  return out;
}

IntList IntList::prepend(std::int64_t head) const {
  return IntList(std::make_shared<const Cell>(Cell{head, size() + 1, cell_}));
}

IntList IntList::tail() const { return IntList(cell_->tail); }

std::vector<std::int64_t> IntList::to_vector() const {
  std::vector<std::int64_t> out;
  out.reserve(size());
  for (const Cell* c = cell_.get(); c != nullptr; c = c->tail.get()) {
    out.push_back(c->head);
  }
  return out;
}

bool operator==(const IntList& a, const IntList& b) {
  return a.to_vector() == b.to_vector();
}

Value make_bool(bool b) { return Value{b}; }
Value make_int(std::int64_t n) { return Value{n}; }
Value make_list(IntList xs) { return Value{std::move(xs)}; }
Value make_list(std::span<const std::int64_t> xs) {
  return Value{IntList::from(xs)};
}

std::string to_string(const Value& v) {
  std::ostringstream out;
  std::visit(
      [&](const auto& x) {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, bool>) {
          out << (x ? "true" : "false");
        } else if constexpr (std::is_same_v<X, std::int64_t>) {
          out << x;
        } else if constexpr (std::is_same_v<X, IntList>) {
          out << '[';
          const char* sep = "";
          for (auto n : x.to_vector()) {
            out << sep << n;
            sep = ",";
          }
          out << ']';
        } else {
          out << "<closure \\" << x.binder << ">";
        }
      },
      v.v);
  return out.str();
}

bool same_base_value(const Value& a, const Value& b) {
  if (a.v.index() != b.v.index()) return false;
  if (a.is_closure()) {
    const auto& ca = std::get<Closure>(a.v);
    const auto& cb = std::get<Closure>(b.v);
    return ca.binder == cb.binder && ca.body == cb.body;
  }
  if (a.is_bool()) return std::get<bool>(a.v) == std::get<bool>(b.v);
  if (a.is_int()) return std::get<std::int64_t>(a.v) == std::get<std::int64_t>(b.v);
  return std::get<IntList>(a.v) == std::get<IntList>(b.v);
}

namespace {

class Evaluator {
 public:
  explicit Evaluator(std::uint64_t budget) : budget_(budget) {}

  EvalResult run(const TargetExpr& e, const ValueEnv& env) {
    Value v = eval(e, env);
    return {std::move(v), cost_};
  }

  EvalResult run_body(const Closure& c, const Value& arg) {
    Value v = eval(c.body, c.env.extend(c.binder, arg));
    return {std::move(v), cost_};
  }

 private:
  void charge() {
    if (cost_ >= budget_) throw BudgetExhausted(budget_);
    ++cost_;
  }

  [[noreturn]] static void confused(const char* want, const Value& got) {
    throw EvalError(std::string("internal error: expected ") + want +
                    ", found " + to_string(got));
  }

  std::int64_t as_int(const Value& v) {
    if (!v.is_int()) confused("an integer", v);
    return std::get<std::int64_t>(v.v);
  }
  bool as_bool(const Value& v) {
    if (!v.is_bool()) confused("a boolean", v);
    return std::get<bool>(v.v);
  }
  IntList as_list(const Value& v) {
    if (!v.is_list()) confused("an integer list", v);
    return std::get<IntList>(v.v);
  }

  Value eval(const TargetExpr& e, const ValueEnv& env) {
    charge();
    return std::visit(
        [&](const auto& n) -> Value {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, Var>) {
            const Value* v = env.find(n.name);
            if (v == nullptr) {
              throw EvalError("unbound variable `" + n.name + "`");
            }
            return *v;
          } else if constexpr (std::is_same_v<N, IntConst>) {
            return make_int(n.value);
          } else if constexpr (std::is_same_v<N, BoolConst>) {
            return make_bool(n.value);
          } else if constexpr (std::is_same_v<N, Nil>) {
            return make_list(IntList());
          } else if constexpr (std::is_same_v<N, Cons>) {
            std::int64_t h = as_int(eval(n.head, env));
            return make_list(as_list(eval(n.tail, env)).prepend(h));
          } else if constexpr (std::is_same_v<N, BinRel>) {
            std::int64_t a = as_int(eval(n.lhs, env));
            std::int64_t b = as_int(eval(n.rhs, env));
            charge();  // side condition
            return make_bool(apply(n.op, a, b));
          } else if constexpr (std::is_same_v<N, BinOp>) {
            std::int64_t a = as_int(eval(n.lhs, env));
            std::int64_t b = as_int(eval(n.rhs, env));
            charge();  // side condition
            auto r = apply(n.op, a, b);
            if (!r) {
              throw ArithmeticOverflow("integer overflow in " +
                                       std::to_string(a) + " " +
                                       std::string(symbol(n.op)) + " " +
                                       std::to_string(b));
            }
            return make_int(*r);
          } else if constexpr (std::is_same_v<N, If>) {
            return as_bool(eval(n.test, env)) ? eval(n.then_branch, env)
                                              : eval(n.else_branch, env);
          } else if constexpr (std::is_same_v<N, Lam>) {
            return Value{Closure{n.binder, n.body, env}};
          } else if constexpr (std::is_same_v<N, App>) {
            Value f = eval(n.fn, env);
            if (!f.is_closure()) confused("a closure", f);
            Value arg = eval(n.arg, env);
            const auto& c = std::get<Closure>(f.v);
            return eval(c.body, c.env.extend(c.binder, std::move(arg)));
          } else if constexpr (std::is_same_v<N, Case>) {
            IntList xs = as_list(eval(n.scrutinee, env));
            if (xs.empty()) return eval(n.nil_branch, env);
            return eval(n.cons_branch, env.extend(n.head, make_int(xs.head()))
                                           .extend(n.tail, make_list(xs.tail())));
          } else {
            static_assert(std::is_same_v<N, Fold>);
            IntList xs = as_list(eval(n.scrutinee, env));
            if (xs.empty()) return eval(n.nil_branch, env);
            // Recursive premise: fold y of (...) under env[y -> tail].
            std::string y = "$fold" + std::to_string(fresh_++);
            TargetExpr again = fold(var(y), n.nil_branch, n.head, n.tail,
                                    n.rec, n.step);
            Value acc = eval(again, env.extend(y, make_list(xs.tail())));
            return eval(n.step, env.extend(n.head, make_int(xs.head()))
                                    .extend(n.tail, make_list(xs.tail()))
                                    .extend(n.rec, std::move(acc)));
          }
        },
        e->node);
  }

  std::uint64_t budget_;
  std::uint64_t cost_ = 0;
  std::uint64_t fresh_ = 0;
};

}  // namespace

EvalResult eval(const TargetExpr& e, const ValueEnv& env,
                std::uint64_t budget) {
  return Evaluator(budget).run(e, env);
}

EvalResult eval_body(const Closure& closure, const Value& arg,
                     std::uint64_t budget) {
  return Evaluator(budget).run_body(closure, arg);
}

std::uint64_t value_size(const Value& v, const TargetTy& ty) {
  switch (ty.kind()) {
    case TargetTy::Kind::kInt:
      if (v.is_int()) return 1;
      break;
    case TargetTy::Kind::kBool:
      if (v.is_bool()) return 1;
      break;
    case TargetTy::Kind::kIntList:
      if (v.is_list()) return std::get<IntList>(v.v).size();
      break;
    case TargetTy::Kind::kArrow:
      throw EvalError("value_size is undefined at arrow type " +
                      to_string(ty));
  }
  throw EvalError("value " + to_string(v) + " does not have type " +
                  to_string(ty));
}

}  // namespace costcert::target
