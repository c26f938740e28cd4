// Copyright 2026 The Attribeo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "attrib/combination.hpp"

#include <stdexcept>

namespace attrib {

void combination_function::add(const player_set& combination, const rational& value) {
  if (combination.empty())
    throw std::invalid_argument("the empty combination carries no benefit");
  if (value == 0) return;
  auto [it, inserted] = support_.try_emplace(combination, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) support_.erase(it);
  }
}

rational combination_function::value(const player_set& combination) const {
  auto it = support_.find(combination);
  return it == support_.end() ? rational(0) : it->second;
}

rational combination_function::total() const {
  rational sum = 0;
  for (const auto& [s, v] : support_) sum += v;
  return sum;
}

rational combination_function::member_total(int player) const {
  rational sum = 0;
  for (const auto& [s, v] : support_) {
    if (s.contains(player)) sum += v;
  }
  return sum;
}

bool combination_function::nonnegative() const {
  for (const auto& [s, v] : support_) {
    if (v < 0) return false;
  }
  return true;
}

combination_function merge(const combination_function& a, const combination_function& b) {
  if (a.universe_size() != b.universe_size())
    throw std::invalid_argument("cannot merge functions over different universes");
  combination_function out = a;
  for (const auto& [s, v] : b.support()) out.add(s, v);
  return out;
}

}  // namespace attrib
