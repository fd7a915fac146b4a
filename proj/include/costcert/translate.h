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

// Translation of target types and terms into the complexity language.

#ifndef COSTCERT_TRANSLATE_H_
#define COSTCERT_TRANSLATE_H_

#include <map>
#include <string>

#include "costcert/cplx.h"
#include "costcert/target_syntax.h"

namespace costcert::translate {

// Potential type: N at base types, pot(σ) -> ‖τ‖ at σ -> τ.
cplx::CTy pot_ty(const target::TargetTy& t);

// ‖τ‖ = N × pot(τ).
cplx::CTy translate_ty(const target::TargetTy& t);

// Pointwise translate_ty, preserving binding order.
cplx::CTypeContext translate_ctx(const target::TypeContext& ctx);

// Compositional translation; target variables map to complexity variables
// of the same name. The input should typecheck.
cplx::CplxExpr translate(const target::TargetExpr& e);

// Simultaneous capture-avoiding substitution; bound variables that would
// capture a free variable of a replacement are renamed.
cplx::CplxExpr subst(const cplx::CplxExpr& e,
                     const std::map<std::string, cplx::CplxExpr>& bindings);

}  // namespace costcert::translate

#endif  // COSTCERT_TRANSLATE_H_
