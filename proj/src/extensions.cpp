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

#include "attrib/extensions.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace attrib {

int extended_problem::player_id(int channel, int index) const {
  auto it = id_lookup.find({channel, index});
  return it == id_lookup.end() ? -1 : it->second;
}

namespace {

extended_problem build_extension(const attribution_problem& problem, extension_kind kind,
                                 const std::vector<extended_player>& players) {
  extended_problem out;
  out.kind = kind;
  out.players = players;
  std::sort(out.players.begin(), out.players.end());
  out.kpi = combination_function(static_cast<int>(out.players.size()));
  for (size_t id = 0; id < out.players.size(); ++id) {
    const auto& player = out.players[id];
    out.id_lookup[{player.channel, player.index}] = static_cast<int>(id);
    out.player_labels.push_back(problem.label(player.channel) +
                                (kind == extension_kind::repetition ? "^" : "@") +
                                std::to_string(player.index));
  }
  return out;
}

}  // namespace

extended_problem repetition_extend(const attribution_problem& problem) {
  std::vector<extended_player> players;
  for (int channel = 0; channel < problem.channel_count(); ++channel) {
    int reps = path_stats_declared(problem, channel).max_repetitions;
    for (int k = 1; k <= reps; ++k) players.push_back({channel, k});
  }
  extended_problem out = build_extension(problem, extension_kind::repetition, players);

  for (int p = 0; p < problem.path_count(); ++p) {
    const auto& path = problem.paths[static_cast<size_t>(p)];
    player_set combination;
    for (int channel : visited_channels(path).members()) {
      int count = occurrences(path, channel);
      for (int k = 1; k <= count; ++k) combination.insert(out.player_id(channel, k));
    }
    out.kpi.add(combination, problem.kpis[static_cast<size_t>(p)]);
  }
  return out;
}

extended_problem order_extend(const attribution_problem& problem) {
  std::set<std::pair<int, int>> observed;
  for (const auto& path : problem.paths) {
    for (size_t j = 0; j < path.size(); ++j) observed.insert({path[j], static_cast<int>(j) + 1});
  }
  std::vector<extended_player> players;
  for (const auto& [channel, position] : observed) players.push_back({channel, position});
  extended_problem out = build_extension(problem, extension_kind::order, players);

  for (int p = 0; p < problem.path_count(); ++p) {
    const auto& path = problem.paths[static_cast<size_t>(p)];
    player_set combination;
    for (size_t j = 0; j < path.size(); ++j)
      combination.insert(out.player_id(path[j], static_cast<int>(j) + 1));
    out.kpi.add(combination, problem.kpis[static_cast<size_t>(p)]);
  }
  return out;
}

allocation shapley_repetition(const attribution_problem& problem) {
  allocation result(problem.channel_count());
  for (int p = 0; p < problem.path_count(); ++p) {
    const auto& path = problem.paths[static_cast<size_t>(p)];
    const rational& benefit = problem.kpis[static_cast<size_t>(p)];
    rational per_entry = benefit / static_cast<int>(path.size());
    for (int channel : path) result[channel] += per_entry;
  }
  return result;
}

std::map<std::pair<int, int>, rational> shapley_order(const attribution_problem& problem) {
  std::map<std::pair<int, int>, rational> result;
  for (int p = 0; p < problem.path_count(); ++p) {
    const auto& path = problem.paths[static_cast<size_t>(p)];
    rational share = problem.kpis[static_cast<size_t>(p)] / static_cast<int>(path.size());
    for (size_t j = 0; j < path.size(); ++j) result[{path[j], static_cast<int>(j) + 1}] += share;
  }
  return result;
}

std::map<int, rational> position_attribution(const attribution_problem& problem) {
  std::map<int, rational> result;
  for (int p = 0; p < problem.path_count(); ++p) {
    const auto& path = problem.paths[static_cast<size_t>(p)];
    rational share = problem.kpis[static_cast<size_t>(p)] / static_cast<int>(path.size());
    for (size_t j = 0; j < path.size(); ++j) result[static_cast<int>(j) + 1] += share;
  }
  return result;
}

order_decomposition_report check_order_decomposition(const attribution_problem& problem) {
  order_decomposition_report report;
  for (int p = 0; p < problem.path_count(); ++p) {
    const auto& path = problem.paths[static_cast<size_t>(p)];
    if (visited_channels(path).size() != static_cast<int>(path.size()))
      report.repeating_paths.push_back(p);
  }
  report.applicable = report.repeating_paths.empty();
  if (!report.applicable) return report;

  allocation plain = shapley_sum_game(aggregate_combinations(problem));
  auto by_position = shapley_order(problem);
  report.holds = true;
  for (int channel = 0; channel < problem.channel_count(); ++channel) {
    rational total = 0;
    for (const auto& [key, value] : by_position) {
      if (key.first == channel) total += value;
    }
    report.channels.push_back({channel, plain[channel], total});
    if (plain[channel] != total) report.holds = false;
  }
  return report;
}

attribution_problem repeat_once(const attribution_problem& problem, int path_index, int channel) {
  if (path_index < 0 || path_index >= problem.path_count())
    throw std::invalid_argument("path index out of range");
  const auto& path = problem.paths[static_cast<size_t>(path_index)];
  auto last = std::find(path.rbegin(), path.rend(), channel);
  if (last == path.rend())
    throw std::invalid_argument("channel '" + problem.label(channel) +
                                "' does not occur in the selected path");

  std::vector<problem_row> rows = to_rows(problem);
  auto& sequence = rows[static_cast<size_t>(path_index)].first;
  size_t insert_at = static_cast<size_t>(path.rend() - last);  // just after the last occurrence
  sequence.insert(sequence.begin() + static_cast<long>(insert_at), problem.label(channel));
  return make_problem(rows, problem.channels);
}

repetition_monotonicity_report check_repetition_monotonicity(const attribution_problem& problem,
                                                             int path_index, int channel,
                                                             shapley_rule rule) {
  attribution_problem modified = repeat_once(problem, path_index, channel);

  repetition_monotonicity_report report;
  report.rule = rule;
  int modified_channel = modified.channel_index(problem.label(channel));
  report.modified_path = problem.paths[static_cast<size_t>(path_index)];
  auto last = std::find(report.modified_path.rbegin(), report.modified_path.rend(), channel);
  size_t insert_at = static_cast<size_t>(report.modified_path.rend() - last);
  report.modified_path.insert(report.modified_path.begin() + static_cast<long>(insert_at), channel);

  if (rule == shapley_rule::plain) {
    report.before = shapley_sum_game(aggregate_combinations(problem))[channel];
    report.after = shapley_sum_game(aggregate_combinations(modified))[modified_channel];
  } else {
    report.before = shapley_repetition(problem)[channel];
    report.after = shapley_repetition(modified)[modified_channel];
  }
  report.non_decreasing = report.after >= report.before;
  return report;
}

}  // namespace attrib
