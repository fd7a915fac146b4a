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

// Target language: a call-by-value System T over integers, booleans and
// integer lists with structural list recursion (`fold`).

#ifndef COSTCERT_TARGET_SYNTAX_H_
#define COSTCERT_TARGET_SYNTAX_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "costcert/env.h"

namespace costcert::target {

class TargetTy {
 public:
  enum class Kind { kInt, kBool, kIntList, kArrow };

  static TargetTy Int() { return TargetTy(Kind::kInt); }
  static TargetTy Bool() { return TargetTy(Kind::kBool); }
  static TargetTy IntList() { return TargetTy(Kind::kIntList); }
  static TargetTy Arrow(TargetTy domain, TargetTy codomain);

  Kind kind() const { return kind_; }
  bool is_base() const { return kind_ != Kind::kArrow; }
  bool is_arrow() const { return kind_ == Kind::kArrow; }
  // Precondition: is_arrow().
  const TargetTy& domain() const { return arrow_->first; }
  const TargetTy& codomain() const { return arrow_->second; }

  friend bool operator==(const TargetTy& a, const TargetTy& b);

 private:
  explicit TargetTy(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::shared_ptr<const std::pair<TargetTy, TargetTy>> arrow_;
};

// `int`, `bool`, `int*`, `a -> b` (right associative).
std::string to_string(const TargetTy& ty);

// The relation and operator families. Extending the language with another
// relation or operator means adding an enumerator here and a row in the
// tables in target_syntax.cc.
enum class RelOp { kLt, kLe, kEq };
enum class ArithOp { kAdd, kSub, kMul };

std::string_view symbol(RelOp op);
std::string_view symbol(ArithOp op);
bool apply(RelOp op, std::int64_t lhs, std::int64_t rhs);
// Checked; returns nullopt on signed 64-bit overflow.
std::optional<std::int64_t> apply(ArithOp op, std::int64_t lhs,
                                  std::int64_t rhs);

struct TargetNode;
using TargetExpr = std::shared_ptr<const TargetNode>;

struct Var {
  std::string name;
};
struct IntConst {
  std::int64_t value;
};
struct BoolConst {
  bool value;
};
struct Nil {};
struct Cons {
  TargetExpr head;
  TargetExpr tail;
};
struct BinRel {
  RelOp op;
  TargetExpr lhs;
  TargetExpr rhs;
};
struct BinOp {
  ArithOp op;
  TargetExpr lhs;
  TargetExpr rhs;
};
struct If {
  TargetExpr test;
  TargetExpr then_branch;
  TargetExpr else_branch;
};
struct Lam {
  std::string binder;
  TargetTy binder_ty;
  TargetExpr body;
};
struct App {
  TargetExpr fn;
  TargetExpr arg;
};
// case scrutinee of (nil_branch, [head, tail] cons_branch)
struct Case {
  TargetExpr scrutinee;
  TargetExpr nil_branch;
  std::string head;
  std::string tail;
  TargetExpr cons_branch;
};
// fold scrutinee of (nil_branch, [head, tail, rec] step)
struct Fold {
  TargetExpr scrutinee;
  TargetExpr nil_branch;
  std::string head;
  std::string tail;
  std::string rec;
  TargetExpr step;
};

struct TargetNode {
  std::variant<Var, IntConst, BoolConst, Nil, Cons, BinRel, BinOp, If, Lam,
               App, Case, Fold>
      node;
};

// Builders.
TargetExpr var(std::string name);
TargetExpr int_const(std::int64_t value);
TargetExpr bool_const(bool value);
TargetExpr nil();
TargetExpr cons(TargetExpr head, TargetExpr tail);
TargetExpr rel(RelOp op, TargetExpr lhs, TargetExpr rhs);
TargetExpr arith(ArithOp op, TargetExpr lhs, TargetExpr rhs);
TargetExpr if_(TargetExpr test, TargetExpr then_branch,
               TargetExpr else_branch);
TargetExpr lam(std::string binder, TargetTy binder_ty, TargetExpr body);
TargetExpr app(TargetExpr fn, TargetExpr arg);
// app(app(fn, args[0]), args[1]) ...
TargetExpr apply_all(TargetExpr fn, std::span<const TargetExpr> args);
TargetExpr case_(TargetExpr scrutinee, TargetExpr nil_branch,
                 std::string head, std::string tail, TargetExpr cons_branch);
TargetExpr fold(TargetExpr scrutinee, TargetExpr nil_branch, std::string head,
                std::string tail, std::string rec, TargetExpr step);
// Right-nested cons chain ending in nil.
TargetExpr list_literal(std::span<const std::int64_t> elements);

using TypeContext = Env<TargetTy>;

// Syntax-directed: lambda binders carry their type, so no inference is
// needed. Throws TypeError.
TargetTy typecheck(const TypeContext& ctx, const TargetExpr& e);

std::set<std::string> free_vars(const TargetExpr& e);

// Equality up to consistent renaming of bound variables.
bool alpha_equivalent(const TargetExpr& a, const TargetExpr& b);

// Simultaneous capture-avoiding substitution.
TargetExpr substitute(const TargetExpr& e,
                      const std::map<std::string, TargetExpr>& bindings);

// Surface syntax; parse(print(e)) is alpha-equivalent to e.
std::string print(const TargetExpr& e);

// One expression, no `def` bindings. Throws ParseError.
TargetExpr parse(std::string_view text);

// A program file: zero or more `def name = expr;` bindings followed by one
// expression. Each def is substituted into everything after it.
TargetExpr parse_program(std::string_view text);

// Keywords of the surface grammar.
bool is_reserved(std::string_view word);

}  // namespace costcert::target

#endif  // COSTCERT_TARGET_SYNTAX_H_
