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

#ifndef ATTRIB_EXTENSIONS_HPP
#define ATTRIB_EXTENSIONS_HPP

#include <map>
#include <utility>

#include "attrib/problem.hpp"
#include "attrib/sum_game.hpp"

namespace attrib {

enum class extension_kind { repetition, order };

/// A channel copy tagged with an occurrence number (repetition case) or a
/// position (order case). Indices are 1-based.
struct extended_player {
  int channel = 0;
  int index = 0;
  auto operator<=>(const extended_player&) const = default;
};

/// A campaign re-expressed over fictitious players. In the repetition case
/// the k-th appearance of a channel inside a path becomes that channel's
/// k-th occurrence player; in the order case a channel at position j becomes
/// the (channel, j) player. Only the finite benefit support is stored.
struct extended_problem {
  extension_kind kind = extension_kind::repetition;
  std::vector<extended_player> players;   // dense ids, ordered by (channel, index)
  std::vector<std::string> player_labels; // "ch^k" occurrences, "ch@j" positions
  combination_function kpi;               // benefit per extended-player combination

  extended_problem() : kpi(0) {}

  int player_count() const { return static_cast<int>(players.size()); }

  /// Dense id of (channel, index), or -1 if that player does not exist.
  int player_id(int channel, int index) const;

  std::map<std::pair<int, int>, int> id_lookup;
};

extended_problem repetition_extend(const attribution_problem& problem);
extended_problem order_extend(const attribution_problem& problem);

/// Per-channel attribution when repetition matters: each path's benefit is
/// split among its entries, so a channel collects n_i(p)/len(p) of f(p).
/// Equals the per-channel total of the extended game's Shapley value.
allocation shapley_repetition(const attribution_problem& problem);

/// Per (channel, position) attribution: paths where the channel holds that
/// position contribute f(p)/len(p). Keys cover the observed pairs; absent
/// pairs are worth 0.
std::map<std::pair<int, int>, rational> shapley_order(const attribution_problem& problem);

/// Worth of each observed position j: f(p)/len(p) over paths of length >= j.
/// The values over all positions sum to the total benefit.
std::map<int, rational> position_attribution(const attribution_problem& problem);

/// On repetition-free problems the plain per-channel Shapley value must
/// equal the channel's positional values summed; with repetitions the
/// hypothesis fails and the offending paths are listed instead.
struct order_decomposition_report {
  bool applicable = false;
  std::vector<int> repeating_paths;
  bool holds = false;
  struct entry {
    int channel;
    rational plain_value;
    rational position_total;
  };
  std::vector<entry> channels;
};

order_decomposition_report check_order_decomposition(const attribution_problem& problem);

enum class shapley_rule { plain, repetition_aware };

/// Compares a channel's attribution before and after repeating it once more
/// inside one chosen path (same benefit). The repetition-aware rule never
/// loses by this; the plain rule may, which the report simply records.
struct repetition_monotonicity_report {
  shapley_rule rule = shapley_rule::repetition_aware;
  std::vector<int> modified_path;
  rational before;
  rational after;
  bool non_decreasing = false;
};

repetition_monotonicity_report check_repetition_monotonicity(const attribution_problem& problem,
                                                             int path_index, int channel,
                                                             shapley_rule rule);

/// The modified problem itself: `path_index`'s path with one extra
/// occurrence of `channel` spliced in after its last appearance.
attribution_problem repeat_once(const attribution_problem& problem, int path_index, int channel);

}  // namespace attrib

#endif  // ATTRIB_EXTENSIONS_HPP
