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

#include "costcert/target_syntax.h"

#include <array>
#include <sstream>
#include <utility>
#include <vector>

#include "costcert/error.h"

namespace costcert::target {

TargetTy TargetTy::Arrow(TargetTy domain, TargetTy codomain) {
  TargetTy t(Kind::kArrow);
  t.arrow_ = std::make_shared<const std::pair<TargetTy, TargetTy>>(
      std::move(domain), std::move(codomain));
  return t;
}

bool operator==(const TargetTy& a, const TargetTy& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != TargetTy::Kind::kArrow) return true;
  return a.domain() == b.domain() && a.codomain() == b.codomain();
}

std::string to_string(const TargetTy& ty) {
  switch (ty.kind()) {
    case TargetTy::Kind::kInt:
      return "int";
    case TargetTy::Kind::kBool:
      return "bool";
    case TargetTy::Kind::kIntList:
      return "int*";
    case TargetTy::Kind::kArrow: {
      std::string dom = to_string(ty.domain());
      if (ty.domain().is_arrow()) dom = "(" + dom + ")";
      return dom + " -> " + to_string(ty.codomain());
    }
  }
  return "?";
}

namespace {

struct RelRow {
  RelOp op;
  std::string_view symbol;
  bool (*fn)(std::int64_t, std::int64_t);
};

struct ArithRow {
  ArithOp op;
  std::string_view symbol;
  bool (*overflows)(std::int64_t, std::int64_t, std::int64_t*);
};

constexpr std::array<RelRow, 3> kRelations = {{
    {RelOp::kLt, "<", [](std::int64_t a, std::int64_t b) { return a < b; }},
    {RelOp::kLe, "<=", [](std::int64_t a, std::int64_t b) { return a <= b; }},
    {RelOp::kEq, "=", [](std::int64_t a, std::int64_t b) { return a == b; }},
}};

constexpr std::array<ArithRow, 3> kOperators = {{
    {ArithOp::kAdd, "+",
     [](std::int64_t a, std::int64_t b, std::int64_t* out) {
       return __builtin_add_overflow(a, b, out);
     }},
    {ArithOp::kSub, "-",
     [](std::int64_t a, std::int64_t b, std::int64_t* out) {
       return __builtin_sub_overflow(a, b, out);
     }},
    {ArithOp::kMul, "*",
     [](std::int64_t a, std::int64_t b, std::int64_t* out) {
       return __builtin_mul_overflow(a, b, out);
     }},
}};

const RelRow& row(RelOp op) { return kRelations[static_cast<int>(op)]; }
const ArithRow& row(ArithOp op) { return kOperators[static_cast<int>(op)]; }

TargetExpr make(auto node) {
  return std::make_shared<const TargetNode>(TargetNode{std::move(node)});
}

}  // namespace

std::string_view symbol(RelOp op) { return row(op).symbol; }
std::string_view symbol(ArithOp op) { return row(op).symbol; }

bool apply(RelOp op, std::int64_t lhs, std::int64_t rhs) {
  return row(op).fn(lhs, rhs);
}

std::optional<std::int64_t> apply(ArithOp op, std::int64_t lhs,
                                  std::int64_t rhs) {
  std::int64_t out = 0;
  if (row(op).overflows(lhs, rhs, &out)) return std::nullopt;
  return out;
}

TargetExpr var(std::string name) { return make(Var{std::move(name)}); }
TargetExpr int_const(std::int64_t value) { return make(IntConst{value}); }
TargetExpr bool_const(bool value) { return make(BoolConst{value}); }
TargetExpr nil() { return make(Nil{}); }
TargetExpr cons(TargetExpr head, TargetExpr tail) {
  return make(Cons{std::move(head), std::move(tail)});
}
TargetExpr rel(RelOp op, TargetExpr lhs, TargetExpr rhs) {
  return make(BinRel{op, std::move(lhs), std::move(rhs)});
}
TargetExpr arith(ArithOp op, TargetExpr lhs, TargetExpr rhs) {
  return make(BinOp{op, std::move(lhs), std::move(rhs)});
}
TargetExpr if_(TargetExpr test, TargetExpr then_branch,
               TargetExpr else_branch) {
  return make(
      If{std::move(test), std::move(then_branch), std::move(else_branch)});
}
TargetExpr lam(std::string binder, TargetTy binder_ty, TargetExpr body) {
  return make(Lam{std::move(binder), std::move(binder_ty), std::move(body)});
}
TargetExpr app(TargetExpr fn, TargetExpr arg) {
  return make(App{std::move(fn), std::move(arg)});
}
TargetExpr apply_all(TargetExpr fn, std::span<const TargetExpr> args) {
  for (const auto& a : args) fn = app(std::move(fn), a);
  return fn;
}
TargetExpr case_(TargetExpr scrutinee, TargetExpr nil_branch,
                 std::string head, std::string tail, TargetExpr cons_branch) {
  return make(Case{std::move(scrutinee), std::move(nil_branch),
                   std::move(head), std::move(tail), std::move(cons_branch)});
}
TargetExpr fold(TargetExpr scrutinee, TargetExpr nil_branch, std::string head,
                std::string tail, std::string rec, TargetExpr step) {
  return make(Fold{std::move(scrutinee), std::move(nil_branch),
                   std::move(head), std::move(tail), std::move(rec),
                   std::move(step)});
}
TargetExpr list_literal(std::span<const std::int64_t> elements) {
  TargetExpr out = nil();
  for (auto it = elements.rbegin(); it != elements.rend(); ++it) {
    out = cons(int_const(*it), std::move(out));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Typing

namespace {

[[noreturn]] void type_error(const std::string& what, const TargetExpr& e) {
  throw TypeError(what + " in `" + print(e) + "`");
}

void expect(const TargetTy& got, const TargetTy& want, const char* what,
            const TargetExpr& e) {
  if (!(got == want)) {
    type_error(std::string(what) + ": expected " + to_string(want) +
                   ", found " + to_string(got),
               e);
  }
}

}  // namespace

TargetTy typecheck(const TypeContext& ctx, const TargetExpr& e) {
  const TargetTy kInt = TargetTy::Int();
  const TargetTy kList = TargetTy::IntList();
  return std::visit(
      [&](const auto& n) -> TargetTy {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Var>) {
          const TargetTy* t = ctx.find(n.name);
          if (t == nullptr) type_error("unbound variable `" + n.name + "`", e);
          return *t;
        } else if constexpr (std::is_same_v<N, IntConst>) {
          return kInt;
        } else if constexpr (std::is_same_v<N, BoolConst>) {
          return TargetTy::Bool();
        } else if constexpr (std::is_same_v<N, Nil>) {
          return kList;
        } else if constexpr (std::is_same_v<N, Cons>) {
          expect(typecheck(ctx, n.head), kInt, "list head", e);
          expect(typecheck(ctx, n.tail), kList, "list tail", e);
          return kList;
        } else if constexpr (std::is_same_v<N, BinRel>) {
          if (!(typecheck(ctx, n.lhs) == kInt) ||
              !(typecheck(ctx, n.rhs) == kInt)) {
            type_error("relating non-integers", e);
          }
          return TargetTy::Bool();
        } else if constexpr (std::is_same_v<N, BinOp>) {
          if (!(typecheck(ctx, n.lhs) == kInt) ||
              !(typecheck(ctx, n.rhs) == kInt)) {
            type_error("arithmetic on non-integers", e);
          }
          return kInt;
        } else if constexpr (std::is_same_v<N, If>) {
          expect(typecheck(ctx, n.test), TargetTy::Bool(), "if test", e);
          TargetTy a = typecheck(ctx, n.then_branch);
          expect(typecheck(ctx, n.else_branch), a, "branch-type mismatch", e);
          return a;
        } else if constexpr (std::is_same_v<N, Lam>) {
          return TargetTy::Arrow(
              n.binder_ty, typecheck(ctx.extend(n.binder, n.binder_ty), n.body));
        } else if constexpr (std::is_same_v<N, App>) {
          TargetTy f = typecheck(ctx, n.fn);
          if (!f.is_arrow()) {
            type_error("applying a non-arrow of type " + to_string(f), e);
          }
          expect(typecheck(ctx, n.arg), f.domain(), "argument", e);
          return f.codomain();
        } else if constexpr (std::is_same_v<N, Case>) {
          expect(typecheck(ctx, n.scrutinee), kList, "case scrutinee", e);
          TargetTy a = typecheck(ctx, n.nil_branch);
          TypeContext inner = ctx.extend(n.head, kInt).extend(n.tail, kList);
          expect(typecheck(inner, n.cons_branch), a, "branch-type mismatch", e);
          return a;
        } else {
          static_assert(std::is_same_v<N, Fold>);
          expect(typecheck(ctx, n.scrutinee), kList, "fold scrutinee", e);
          TargetTy a = typecheck(ctx, n.nil_branch);
          TypeContext inner =
              ctx.extend(n.head, kInt).extend(n.tail, kList).extend(n.rec, a);
          expect(typecheck(inner, n.step), a, "branch-type mismatch", e);
          return a;
        }
      },
      e->node);
}

// ---------------------------------------------------------------------------
// Variables and substitution

namespace {

void collect_free(const TargetExpr& e, std::vector<std::string>& bound,
                  std::set<std::string>& out) {
  auto is_bound = [&](const std::string& x) {
    for (const auto& b : bound) {
      if (b == x) return true;
    }
    return false;
  };
  auto under = [&](std::initializer_list<std::string> names,
                   const TargetExpr& body) {
    for (const auto& n : names) bound.push_back(n);
    collect_free(body, bound, out);
    bound.resize(bound.size() - names.size());
  };
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Var>) {
          if (!is_bound(n.name)) out.insert(n.name);
        } else if constexpr (std::is_same_v<N, Cons>) {
          collect_free(n.head, bound, out);
          collect_free(n.tail, bound, out);
        } else if constexpr (std::is_same_v<N, BinRel> ||
                             std::is_same_v<N, BinOp>) {
          collect_free(n.lhs, bound, out);
          collect_free(n.rhs, bound, out);
        } else if constexpr (std::is_same_v<N, If>) {
          collect_free(n.test, bound, out);
          collect_free(n.then_branch, bound, out);
          collect_free(n.else_branch, bound, out);
        } else if constexpr (std::is_same_v<N, Lam>) {
          under({n.binder}, n.body);
        } else if constexpr (std::is_same_v<N, App>) {
          collect_free(n.fn, bound, out);
          collect_free(n.arg, bound, out);
        } else if constexpr (std::is_same_v<N, Case>) {
          collect_free(n.scrutinee, bound, out);
          collect_free(n.nil_branch, bound, out);
          under({n.head, n.tail}, n.cons_branch);
        } else if constexpr (std::is_same_v<N, Fold>) {
          collect_free(n.scrutinee, bound, out);
          collect_free(n.nil_branch, bound, out);
          under({n.head, n.tail, n.rec}, n.step);
        }
      },
      e->node);
}

std::string fresh_name(const std::string& base,
                       const std::set<std::string>& avoid) {
  for (int i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!avoid.contains(candidate)) return candidate;
  }
}

using Bindings = std::map<std::string, TargetExpr>;

TargetExpr subst(const TargetExpr& e, const Bindings& bindings);

// Substitutes under `binders`, renaming any binder that would capture a
// free variable of a replacement. Returns the (possibly renamed) binders
// and the new body.
std::pair<std::vector<std::string>, TargetExpr> subst_under(
    std::vector<std::string> binders, const TargetExpr& body,
    const Bindings& bindings) {
  Bindings inner = bindings;
  for (const auto& b : binders) inner.erase(b);
  if (inner.empty()) return {binders, body};

  std::set<std::string> replacement_fv;
  for (const auto& [name, r] : inner) {
    auto fv = free_vars(r);
    replacement_fv.insert(fv.begin(), fv.end());
  }
  std::set<std::string> avoid = replacement_fv;
  auto body_fv = free_vars(body);
  avoid.insert(body_fv.begin(), body_fv.end());
  for (const auto& [name, r] : inner) avoid.insert(name);
  for (const auto& b : binders) avoid.insert(b);

  for (auto& b : binders) {
    if (!replacement_fv.contains(b)) continue;
    std::string renamed = fresh_name(b, avoid);
    avoid.insert(renamed);
    inner[b] = var(renamed);
    b = renamed;
  }
  return {binders, subst(body, inner)};
}

TargetExpr subst(const TargetExpr& e, const Bindings& bindings) {
  if (bindings.empty()) return e;
  return std::visit(
      [&](const auto& n) -> TargetExpr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Var>) {
          auto it = bindings.find(n.name);
          return it == bindings.end() ? e : it->second;
        } else if constexpr (std::is_same_v<N, IntConst> ||
                             std::is_same_v<N, BoolConst> ||
                             std::is_same_v<N, Nil>) {
          return e;
        } else if constexpr (std::is_same_v<N, Cons>) {
          return cons(subst(n.head, bindings), subst(n.tail, bindings));
        } else if constexpr (std::is_same_v<N, BinRel>) {
          return rel(n.op, subst(n.lhs, bindings), subst(n.rhs, bindings));
        } else if constexpr (std::is_same_v<N, BinOp>) {
          return arith(n.op, subst(n.lhs, bindings), subst(n.rhs, bindings));
        } else if constexpr (std::is_same_v<N, If>) {
          return if_(subst(n.test, bindings), subst(n.then_branch, bindings),
                     subst(n.else_branch, bindings));
        } else if constexpr (std::is_same_v<N, Lam>) {
          auto [names, body] = subst_under({n.binder}, n.body, bindings);
          return lam(names[0], n.binder_ty, body);
        } else if constexpr (std::is_same_v<N, App>) {
          return app(subst(n.fn, bindings), subst(n.arg, bindings));
        } else if constexpr (std::is_same_v<N, Case>) {
          auto [names, body] =
              subst_under({n.head, n.tail}, n.cons_branch, bindings);
          return case_(subst(n.scrutinee, bindings),
                       subst(n.nil_branch, bindings), names[0], names[1],
                       body);
        } else {
          auto [names, body] =
              subst_under({n.head, n.tail, n.rec}, n.step, bindings);
          return fold(subst(n.scrutinee, bindings),
                      subst(n.nil_branch, bindings), names[0], names[1],
                      names[2], body);
        }
      },
      e->node);
}

// Alpha-equivalence. Each stack holds the binders in scope, innermost last;
// two variables match if both resolve to the same depth or both are free
// with the same name.
class AlphaEq {
 public:
  bool eq(const TargetExpr& a, const TargetExpr& b) {
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& na) {
          using N = std::decay_t<decltype(na)>;
          const auto& nb = std::get<N>(b->node);
          if constexpr (std::is_same_v<N, Var>) {
            return same_var(na.name, nb.name);
          } else if constexpr (std::is_same_v<N, IntConst> ||
                               std::is_same_v<N, BoolConst>) {
            return na.value == nb.value;
          } else if constexpr (std::is_same_v<N, Nil>) {
            return true;
          } else if constexpr (std::is_same_v<N, Cons>) {
            return eq(na.head, nb.head) && eq(na.tail, nb.tail);
          } else if constexpr (std::is_same_v<N, BinRel> ||
                               std::is_same_v<N, BinOp>) {
            return na.op == nb.op && eq(na.lhs, nb.lhs) && eq(na.rhs, nb.rhs);
          } else if constexpr (std::is_same_v<N, If>) {
            return eq(na.test, nb.test) && eq(na.then_branch, nb.then_branch) &&
                   eq(na.else_branch, nb.else_branch);
          } else if constexpr (std::is_same_v<N, Lam>) {
            return na.binder_ty == nb.binder_ty &&
                   under({na.binder}, {nb.binder}, na.body, nb.body);
          } else if constexpr (std::is_same_v<N, App>) {
            return eq(na.fn, nb.fn) && eq(na.arg, nb.arg);
          } else if constexpr (std::is_same_v<N, Case>) {
            return eq(na.scrutinee, nb.scrutinee) &&
                   eq(na.nil_branch, nb.nil_branch) &&
                   under({na.head, na.tail}, {nb.head, nb.tail},
                         na.cons_branch, nb.cons_branch);
          } else {
            return eq(na.scrutinee, nb.scrutinee) &&
                   eq(na.nil_branch, nb.nil_branch) &&
                   under({na.head, na.tail, na.rec}, {nb.head, nb.tail, nb.rec},
                         na.step, nb.step);
          }
        },
        a->node);
  }

 private:
  static std::ptrdiff_t depth_of(const std::vector<std::string>& stack,
                                 const std::string& x) {
    for (std::size_t i = stack.size(); i-- > 0;) {
      if (stack[i] == x) return static_cast<std::ptrdiff_t>(i);
    }
    return -1;
  }

  bool same_var(const std::string& x, const std::string& y) const {
    auto dx = depth_of(left_, x);
    auto dy = depth_of(right_, y);
    if (dx < 0 && dy < 0) return x == y;
    return dx == dy;
  }

  bool under(std::initializer_list<std::string> xs,
             std::initializer_list<std::string> ys, const TargetExpr& a,
             const TargetExpr& b) {
    left_.insert(left_.end(), xs);
    right_.insert(right_.end(), ys);
    bool r = eq(a, b);
    left_.resize(left_.size() - xs.size());
    right_.resize(right_.size() - ys.size());
    return r;
  }

  std::vector<std::string> left_;
  std::vector<std::string> right_;
};

}  // namespace

std::set<std::string> free_vars(const TargetExpr& e) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(e, bound, out);
  return out;
}

bool alpha_equivalent(const TargetExpr& a, const TargetExpr& b) {
  return AlphaEq().eq(a, b);
}

TargetExpr substitute(const TargetExpr& e,
                      const std::map<std::string, TargetExpr>& bindings) {
  return subst(e, bindings);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Precedence levels, loosest first. Binders and `if` live at kTop and extend
// as far right as possible, so they are parenthesized anywhere tighter.
enum Level { kTop = 0, kRel, kCons, kAdd, kMul, kApp, kAtom };

Level level_of(ArithOp op) { return op == ArithOp::kMul ? kMul : kAdd; }

void emit(const TargetExpr& e, Level ctx, std::ostringstream& out);

void emit_paren(Level own, Level ctx,
                std::ostringstream& out, auto body) {
  bool paren = own < ctx;
  if (paren) out << '(';
  body();
  if (paren) out << ')';
}

void emit(const TargetExpr& e, Level ctx, std::ostringstream& out) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Var>) {
          out << n.name;
        } else if constexpr (std::is_same_v<N, IntConst>) {
          if (n.value < 0) {
            out << '(' << n.value << ')';
          } else {
            out << n.value;
          }
        } else if constexpr (std::is_same_v<N, BoolConst>) {
          out << (n.value ? "true" : "false");
        } else if constexpr (std::is_same_v<N, Nil>) {
          out << "nil";
        } else if constexpr (std::is_same_v<N, Cons>) {
          emit_paren(kCons, ctx, out, [&] {
            emit(n.head, kAdd, out);
            out << " :: ";
            emit(n.tail, kCons, out);
          });
        } else if constexpr (std::is_same_v<N, BinRel>) {
          emit_paren(kRel, ctx, out, [&] {
            emit(n.lhs, kCons, out);
            out << ' ' << symbol(n.op) << ' ';
            emit(n.rhs, kCons, out);
          });
        } else if constexpr (std::is_same_v<N, BinOp>) {
          Level own = level_of(n.op);
          emit_paren(own, ctx, out, [&] {
            emit(n.lhs, own, out);
            out << ' ' << symbol(n.op) << ' ';
            emit(n.rhs, static_cast<Level>(own + 1), out);
          });
        } else if constexpr (std::is_same_v<N, If>) {
          emit_paren(kTop, ctx, out, [&] {
            out << "if ";
            emit(n.test, kTop, out);
            out << " then ";
            emit(n.then_branch, kTop, out);
            out << " else ";
            emit(n.else_branch, kTop, out);
          });
        } else if constexpr (std::is_same_v<N, Lam>) {
          emit_paren(kTop, ctx, out, [&] {
            out << '\\' << n.binder << ':' << to_string(n.binder_ty) << ". ";
            emit(n.body, kTop, out);
          });
        } else if constexpr (std::is_same_v<N, App>) {
          emit_paren(kApp, ctx, out, [&] {
            emit(n.fn, kApp, out);
            out << ' ';
            emit(n.arg, kAtom, out);
          });
        } else if constexpr (std::is_same_v<N, Case>) {
          emit_paren(kTop, ctx, out, [&] {
            out << "case ";
            emit(n.scrutinee, kTop, out);
            out << " of (";
            emit(n.nil_branch, kTop, out);
            out << ", [" << n.head << ", " << n.tail << "] ";
            emit(n.cons_branch, kTop, out);
            out << ')';
          });
        } else {
          emit_paren(kTop, ctx, out, [&] {
            out << "fold ";
            emit(n.scrutinee, kTop, out);
            out << " of (";
            emit(n.nil_branch, kTop, out);
            out << ", [" << n.head << ", " << n.tail << ", " << n.rec << "] ";
            emit(n.step, kTop, out);
            out << ')';
          });
        }
      },
      e->node);
}

}  // namespace

std::string print(const TargetExpr& e) {
  std::ostringstream out;
  emit(e, kTop, out);
  return out.str();
}

}  // namespace costcert::target
