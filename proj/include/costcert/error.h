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

#ifndef COSTCERT_ERROR_H_
#define COSTCERT_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace costcert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed surface text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Ill-typed target or complexity term.
class TypeError : public Error {
 public:
  using Error::Error;
};

// Evaluation reached a state that typechecked input cannot produce:
// unbound variable, dynamic type confusion, shape mismatch.
class EvalError : public Error {
 public:
  using Error::Error;
};

class BudgetExhausted : public Error {
 public:
  explicit BudgetExhausted(unsigned long long budget)
      : Error("evaluation budget of " + std::to_string(budget) +
              " cost units exhausted"),
        budget_(budget) {}
  unsigned long long budget() const { return budget_; }

 private:
  unsigned long long budget_;
};

// Checked 64-bit integer or natural-number arithmetic overflowed.
class ArithmeticOverflow : public Error {
 public:
  using Error::Error;
};

}  // namespace costcert

#endif  // COSTCERT_ERROR_H_
