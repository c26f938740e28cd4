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

#ifndef ATTRIB_RUNNER_HPP
#define ATTRIB_RUNNER_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "attrib/problem.hpp"
#include "attrib/report.hpp"
#include "attrib/sum_game.hpp"

namespace attrib {

enum class rule_id { shapley, shapley_rep, shapley_order, positions, cel, prop };

const char* rule_name(rule_id id);
std::optional<rule_id> rule_from_name(std::string_view name);

enum class output_mode { table, json };

struct run_config {
  std::string input_path;
  std::optional<input_format> format;  // unset: decided by file extension
  std::vector<rule_id> rules;
  output_mode output = output_mode::table;
  int precision = 6;
  bool oracle = false;   // cross-check Shapley routes against brute force
  bool verify = false;   // attach property reports
  int max_oracle_players = 12;
};

// Exit codes shared by the library runner and the binary.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_verification = 3;

struct rule_result {
  rule_id id = rule_id::shapley;
  // Channel-keyed shares (shapley, shapley-rep, cel, prop), in label order.
  std::vector<std::pair<std::string, rational>> shares;
  // Position-keyed shares (positions rule).
  std::vector<std::pair<int, rational>> position_shares;
  // (channel label, occurrence or position, value) detail rows.
  std::vector<std::tuple<std::string, int, rational>> extended;
  std::optional<rational> loss;  // cel only
  bool has_order_split = false;
  std::vector<std::tuple<std::string, int, rational>> order_split;
  // (channel label, merged share, split total, sign of merged - split)
  std::vector<std::tuple<std::string, rational, rational, int>> order_decomposition;
};

struct attribution_report {
  attribution_problem problem;
  std::vector<rule_result> rules;
  std::vector<check_item> checks;  // named "<rule>/<property>"
  bool verification_failed = false;  // some hard check failed or an oracle disagreed
};

/// Computes every requested rule, plus oracle cross-checks and property
/// reports when asked. Throws parse_error and resource_error upward.
attribution_report build_report(const run_config& config, const attribution_problem& problem);

std::string render_table(const attribution_report& report, int precision);
std::string render_json(const attribution_report& report, int precision);

/// Full pipeline: read, compute, emit to `out`, diagnostics to `err`.
/// Returns the process exit code.
int run(const run_config& config, std::ostream& out, std::ostream& err);

}  // namespace attrib

#endif  // ATTRIB_RUNNER_HPP
