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

#ifndef ATTRIB_SUM_GAME_HPP
#define ATTRIB_SUM_GAME_HPP

#include <functional>
#include <optional>

#include "attrib/combination.hpp"
#include "attrib/report.hpp"

namespace attrib {

/// A transferable-utility game: a worth for every coalition, zero on the
/// empty one. Evaluators are immutable closures over immutable data.
struct characteristic_function {
  int universe_size = 0;
  std::function<rational(const player_set&)> worth;

  rational operator()(const player_set& coalition) const { return worth(coalition); }
};

/// Payoff per player, densely indexed over the game's universe.
struct allocation {
  std::vector<rational> payoffs;

  explicit allocation(int universe_size = 0)
      : payoffs(static_cast<size_t>(universe_size), rational(0)) {}

  int universe_size() const { return static_cast<int>(payoffs.size()); }
  rational& operator[](int player) { return payoffs.at(static_cast<size_t>(player)); }
  const rational& operator[](int player) const { return payoffs.at(static_cast<size_t>(player)); }
  rational sum() const;

  bool operator==(const allocation& other) const = default;
};

/// The coalition worth induced by a combination-level benefit function: each
/// coalition is worth the benefit of every combination it can form, i.e. the
/// sum of f over subsets of the coalition. Evaluation walks the finite
/// support, never the coalition's power set.
characteristic_function sum_game(const combination_function& kpi);

/// Dividends of every coalition within `players`, by the recursion
/// d(S) = v(S) - sum of d over proper subsets, with zero entries dropped.
/// Cost grows as 2^|players|; exceeding `max_players` raises resource_error.
combination_function harsanyi_dividends(const characteristic_function& game,
                                        const player_set& players, int max_players = 20);

/// Shapley value by direct marginal-contribution averaging over all
/// coalitions. Exponential; serves as the independent oracle for the
/// closed-form routes. Exceeding `max_players` raises resource_error.
allocation shapley_bruteforce(const characteristic_function& game, const player_set& players,
                              int max_players = 12);

/// Shapley value of the sum game straight from the benefit function: each
/// combination's value splits equally among its members. Linear in the
/// support size.
allocation shapley_sum_game(const combination_function& kpi);

rational coalition_payoff(const allocation& alloc, const player_set& coalition);

struct stability_report {
  bool pass = true;
  bool exhaustive = false;      // every coalition was checked
  long coalitions_checked = 0;
  std::optional<player_set> violation;  // first coalition paid less than its worth
  rational violation_payoff;
  rational violation_worth;
};

/// Verifies that no coalition is paid less than its sum-game worth. Checks
/// all support sets and their pairwise unions; below
/// `exhaustive_max_players` players it sweeps every coalition.
stability_report check_stability(const combination_function& kpi, const allocation& alloc,
                                 int exhaustive_max_players = 12);

/// Finest partition of the universe into independent blocks: connected
/// components of the hypergraph whose edges are the support combinations.
/// A set is independent exactly when it is a union of returned blocks.
std::vector<player_set> find_independent_partition(const combination_function& kpi);

/// Checks the allocation against the attribution axioms: efficiency,
/// symmetry, null player, stand-alone, fair ranking and no-subsidizing.
/// Symmetry and dominance conditions are decided over the finitely many
/// subsets derivable from the support (all others hold trivially).
check_report check_axioms(const combination_function& kpi, const allocation& alloc);

}  // namespace attrib

#endif  // ATTRIB_SUM_GAME_HPP
