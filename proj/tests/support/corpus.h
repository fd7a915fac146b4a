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

#ifndef COSTCERT_TESTS_SUPPORT_CORPUS_H_
#define COSTCERT_TESTS_SUPPORT_CORPUS_H_

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "costcert/target_syntax.h"

namespace costcert::testing {

inline std::string corpus_path(const std::string& name) {
  return std::string(COSTCERT_PROGRAMS_DIR) + "/" + name + ".tgt";
}

// Parses programs/<name>.tgt.
inline target::TargetExpr load_program(const std::string& name) {
  std::ifstream in(corpus_path(name));
  if (!in) throw std::runtime_error("missing corpus program " + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return target::parse_program(buf.str());
}

}  // namespace costcert::testing

#endif  // COSTCERT_TESTS_SUPPORT_CORPUS_H_
