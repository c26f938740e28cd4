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

#ifndef ATTRIB_PROBLEM_HPP
#define ATTRIB_PROBLEM_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "attrib/combination.hpp"
#include "attrib/errors.hpp"
#include "attrib/player_set.hpp"
#include "attrib/rational.hpp"

namespace attrib {

/// A campaign log: the channel universe, the distinct observed paths to
/// conversion and the benefit each one produced.
///
/// Channels are interned to dense indices, sorted by label. Paths are stored
/// as index sequences, deduplicated (equal sequences merge by summing their
/// benefit) and kept in lexicographic order, so two logs with the same rows
/// in any order compare equal.
struct attribution_problem {
  std::vector<std::string> channels;     // sorted unique labels; index = channel id
  std::vector<std::vector<int>> paths;   // distinct, each nonempty, sorted
  std::vector<rational> kpis;            // parallel to paths, each >= 0
  rational total_benefit;                // sum of kpis

  int channel_count() const { return static_cast<int>(channels.size()); }
  int path_count() const { return static_cast<int>(paths.size()); }
  const std::string& label(int channel) const { return channels.at(static_cast<size_t>(channel)); }

  /// Index of a label, or -1 when unknown.
  int channel_index(const std::string& label) const;

  bool operator==(const attribution_problem& other) const = default;
};

enum class input_format { csv, json };

/// One raw input row: a sequence of channel labels and the path's benefit.
using problem_row = std::pair<std::vector<std::string>, rational>;

/// Builds a validated problem from rows. Duplicate sequences merge by
/// summing their KPI. `declared_channels` admits channels that appear in no
/// path; they participate as null players.
attribution_problem make_problem(const std::vector<problem_row>& rows,
                                 const std::vector<std::string>& declared_channels = {});

/// Parses a campaign log.
///
/// CSV: one `path,kpi` row per line, path tokens joined by '>'; an optional
/// header row; `#` starts a comment; a `#channels: a,b,c` line declares
/// extra channels. JSON: {"paths":[{"sequence":[...],"kpi":"40"}],
/// "channels":[...]} with KPI given as a string or integer.
///
/// Throws parse_error (with the offending line for CSV input).
attribution_problem parse_problem(std::istream& input, input_format format);
attribution_problem parse_problem_text(std::string_view text, input_format format);

std::string to_csv(const attribution_problem& problem);
std::string to_json_text(const attribution_problem& problem);

/// Per-channel occurrence statistics over the observed paths.
struct channel_path_stats {
  int max_repetitions = 0;            // largest n_i(p) over paths containing i
  std::vector<int> positions;         // 1-based, sorted, deduplicated
  std::vector<int> appearing_paths;   // indices into problem.paths
};

/// Stats for a channel that occurs in at least one path; throws
/// std::invalid_argument for declared-but-unseen channels.
channel_path_stats path_stats(const attribution_problem& problem, int channel);

/// Same, but answers all-zero stats for declared channels absent from every
/// path instead of throwing.
channel_path_stats path_stats_declared(const attribution_problem& problem, int channel);

/// Aggregates path benefits by visited-channel set: the combination-level
/// KPI. The support never exceeds the number of distinct paths and its sum
/// equals the total benefit.
combination_function aggregate_combinations(const attribution_problem& problem);

rational total_benefit(const attribution_problem& problem);

/// The problem's rows as label sequences, e.g. to rebuild a modified log.
std::vector<problem_row> to_rows(const attribution_problem& problem);

/// Number of occurrences of `channel` in `path`.
int occurrences(const std::vector<int>& path, int channel);

/// The set of channels visited along `path`.
player_set visited_channels(const std::vector<int>& path);

}  // namespace attrib

#endif  // ATTRIB_PROBLEM_HPP
