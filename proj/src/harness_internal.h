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

#ifndef COSTCERT_SRC_HARNESS_INTERNAL_H_
#define COSTCERT_SRC_HARNESS_INTERNAL_H_

#include <random>

#include "costcert/cplx.h"
#include "costcert/harness.h"
#include "costcert/target_eval.h"

namespace costcert::harness {

// A random value of base type `ty` within cfg's integer range and list
// length limit.
target::Value random_base_value(std::mt19937_64& rng,
                                const target::TargetTy& ty,
                                const ProbeConfig& cfg);

// N or N -> N x N.
cplx::CTy random_potential_type(std::mt19937_64& rng);

}  // namespace costcert::harness

#endif  // COSTCERT_SRC_HARNESS_INTERNAL_H_
