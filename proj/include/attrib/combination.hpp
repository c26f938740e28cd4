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

#ifndef ATTRIB_COMBINATION_HPP
#define ATTRIB_COMBINATION_HPP

#include <map>

#include "attrib/player_set.hpp"
#include "attrib/rational.hpp"

namespace attrib {

/// Finite-support set function over nonempty player subsets.
///
/// Holds the aggregated benefit per channel combination, and doubles as the
/// container for dividend maps and extended-player benefit functions. Only
/// nonzero entries are stored; looking up an absent combination yields 0.
/// Benefit functions are nonnegative by construction; dividend maps of
/// arbitrary games may carry negative entries.
class combination_function {
 public:
  explicit combination_function(int universe_size) : universe_size_(universe_size) {}

  int universe_size() const { return universe_size_; }

  /// Accumulates `value` onto the combination. Entries that cancel to zero
  /// are removed. The empty combination is rejected.
  void add(const player_set& combination, const rational& value);

  /// 0 for combinations outside the support.
  rational value(const player_set& combination) const;

  const std::map<player_set, rational>& support() const { return support_; }

  /// Sum over the whole support.
  rational total() const;

  /// Sum over combinations containing `player` (a claim, in bankruptcy terms).
  rational member_total(int player) const;

  bool nonnegative() const;

  bool operator==(const combination_function& other) const = default;

 private:
  int universe_size_;
  std::map<player_set, rational> support_;
};

/// Key-wise sum of two functions over the same universe.
combination_function merge(const combination_function& a, const combination_function& b);

}  // namespace attrib

#endif  // ATTRIB_COMBINATION_HPP
