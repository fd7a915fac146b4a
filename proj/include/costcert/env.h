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

#ifndef COSTCERT_ENV_H_
#define COSTCERT_ENV_H_

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace costcert {

// Persistent finite map from names to T. Extension is O(1) and shares the
// parent; a later binding shadows an earlier one with the same name.
template <typename T>
class Env {
 public:
  Env() = default;

  [[nodiscard]] Env extend(std::string name, T value) const {
    Env out;
    out.head_ = std::make_shared<const Cell>(
        Cell{std::move(name), std::move(value), head_});
    return out;
  }

  [[nodiscard]] const T* find(std::string_view name) const {
    for (const Cell* c = head_.get(); c != nullptr; c = c->next.get()) {
      if (c->name == name) return &c->value;
    }
    return nullptr;
  }

  [[nodiscard]] bool contains(std::string_view name) const {
    return find(name) != nullptr;
  }

  [[nodiscard]] bool empty() const { return head_ == nullptr; }

  // Equal for copies of the same Env; distinct live Envs never share one.
  [[nodiscard]] const void* identity() const { return head_.get(); }

  // Every binding, oldest first, including shadowed ones. Re-extending an
  // empty Env in this order reproduces the same visible map.
  [[nodiscard]] std::vector<std::pair<std::string, T>> bindings() const {
    std::vector<std::pair<std::string, T>> out;
    for (const Cell* c = head_.get(); c != nullptr; c = c->next.get()) {
      out.emplace_back(c->name, c->value);
    }
    return {out.rbegin(), out.rend()};
  }

 private:
  struct Cell {
    std::string name;
    T value;
    std::shared_ptr<const Cell> next;
  };
  std::shared_ptr<const Cell> head_;
};

}  // namespace costcert

#endif  // COSTCERT_ENV_H_
