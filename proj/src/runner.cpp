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

#include "attrib/runner.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "attrib/bankruptcy.hpp"
#include "attrib/errors.hpp"
#include "attrib/extensions.hpp"

namespace attrib {

namespace {

constexpr struct {
  rule_id id;
  const char* name;
} kRuleNames[] = {
    {rule_id::shapley, "shapley"},       {rule_id::shapley_rep, "shapley-rep"},
    {rule_id::shapley_order, "shapley-order"}, {rule_id::positions, "positions"},
    {rule_id::cel, "cel"},               {rule_id::prop, "prop"},
};

void add_check(attribution_report& report, std::string name, bool passed, bool hard,
               std::string detail = {}) {
  check_status status =
      passed ? check_status::pass : (hard ? check_status::fail : check_status::info);
  if (!passed && hard) report.verification_failed = true;
  report.checks.push_back({std::move(name), status, std::move(detail)});
}

void import_checks(attribution_report& report, const check_report& source,
                   const std::string& prefix, const std::vector<std::string>& soft = {}) {
  for (const auto& item : source.items) {
    bool is_soft = std::find(soft.begin(), soft.end(), item.name) != soft.end();
    if (item.status == check_status::info) {
      report.checks.push_back({prefix + item.name, check_status::info, item.detail});
    } else {
      add_check(report, prefix + item.name, item.status == check_status::pass, !is_soft,
                item.detail);
    }
  }
}

const char* relation_text(int relation) {
  return relation > 0 ? ">" : relation < 0 ? "<" : "=";
}

bool allocations_equal(const allocation& a, const allocation& b) { return a == b; }

void compute_shapley(const run_config& config, const attribution_problem& problem,
                     const combination_function& kpi, attribution_report& report,
                     rule_result& result) {
  allocation shares = shapley_sum_game(kpi);
  for (int i = 0; i < problem.channel_count(); ++i)
    result.shares.emplace_back(problem.label(i), shares[i]);

  if (config.oracle) {
    allocation oracle = shapley_bruteforce(sum_game(kpi),
                                           player_set::full(kpi.universe_size()),
                                           config.max_oracle_players);
    add_check(report, "shapley/oracle", allocations_equal(shares, oracle), true,
              "marginal-contribution brute force");
  }
  if (config.verify) {
    import_checks(report, check_axioms(kpi, shares), "shapley/");
    stability_report stability = check_stability(kpi, shares);
    add_check(report, "shapley/stability", stability.pass, true,
              stability.exhaustive ? "all coalitions checked"
                                   : "support sets and pairwise unions checked");
  }
}

void compute_shapley_rep(const run_config& config, const attribution_problem& problem,
                         attribution_report& report, rule_result& result) {
  extended_problem ext = repetition_extend(problem);
  allocation per_player = shapley_sum_game(ext.kpi);
  allocation per_channel = shapley_repetition(problem);

  for (int i = 0; i < problem.channel_count(); ++i)
    result.shares.emplace_back(problem.label(i), per_channel[i]);
  for (int id = 0; id < ext.player_count(); ++id)
    result.extended.emplace_back(problem.label(ext.players[static_cast<size_t>(id)].channel),
                                 ext.players[static_cast<size_t>(id)].index, per_player[id]);

  if (config.oracle) {
    allocation oracle = shapley_bruteforce(sum_game(ext.kpi),
                                           player_set::full(ext.player_count()),
                                           config.max_oracle_players);
    add_check(report, "shapley-rep/oracle", allocations_equal(per_player, oracle), true,
              "brute force on the occurrence-player game");
  }
  if (config.verify) {
    rational channel_total = per_channel.sum();
    add_check(report, "shapley-rep/channel-efficiency", channel_total == total_benefit(problem),
              true, "per-channel attributions sum to the campaign benefit");
    allocation occurrence_totals(problem.channel_count());
    for (int id = 0; id < ext.player_count(); ++id)
      occurrence_totals[ext.players[static_cast<size_t>(id)].channel] += per_player[id];
    add_check(report, "shapley-rep/occurrence-consistency",
              allocations_equal(occurrence_totals, per_channel), true,
              "channel value equals its occurrence players' total");
    import_checks(report, check_axioms(ext.kpi, per_player), "shapley-rep/");
  }
}

void compute_shapley_order(const run_config& config, const attribution_problem& problem,
                           attribution_report& report, rule_result& result) {
  auto values = shapley_order(problem);
  for (const auto& [key, value] : values)
    result.extended.emplace_back(problem.label(key.first), key.second, value);
  std::sort(result.extended.begin(), result.extended.end());

  if (config.oracle) {
    extended_problem ext = order_extend(problem);
    allocation oracle = shapley_bruteforce(sum_game(ext.kpi),
                                           player_set::full(ext.player_count()),
                                           config.max_oracle_players);
    bool agree = true;
    for (int id = 0; id < ext.player_count(); ++id) {
      const auto& player = ext.players[static_cast<size_t>(id)];
      auto it = values.find({player.channel, player.index});
      rational closed_form = it == values.end() ? rational(0) : it->second;
      if (closed_form != oracle[id]) agree = false;
    }
    add_check(report, "shapley-order/oracle", agree, true,
              "brute force on the position-player game");
  }
  if (config.verify) {
    rational total = 0;
    for (const auto& [key, value] : values) total += value;
    add_check(report, "shapley-order/efficiency", total == total_benefit(problem), true);
    order_decomposition_report decomposition = check_order_decomposition(problem);
    if (decomposition.applicable) {
      add_check(report, "shapley-order/decomposition", decomposition.holds, true,
                "per-channel position values sum to the plain Shapley value");
    } else {
      std::string paths;
      for (int p : decomposition.repeating_paths)
        paths += (paths.empty() ? "#" : ", #") + std::to_string(p);
      report.checks.push_back({"shapley-order/decomposition", check_status::info,
                               "not applicable: repeated channels in paths " + paths});
    }
  }
}

void compute_positions(const run_config& config, const attribution_problem& problem,
                       attribution_report& report, rule_result& result) {
  for (const auto& [position, value] : position_attribution(problem))
    result.position_shares.emplace_back(position, value);
  if (config.verify) {
    rational total = 0;
    for (const auto& [position, value] : result.position_shares) total += value;
    add_check(report, "positions/efficiency", total == total_benefit(problem), true);
  }
}

void compute_claims_rule(const run_config& config, const attribution_problem& problem,
                         const combination_function& kpi, claim_rule rule,
                         attribution_report& report, rule_result& result) {
  std::string prefix = rule == claim_rule::cel ? "cel/" : "prop/";
  bankruptcy_problem base = to_bankruptcy(kpi, problem.channels);

  allocation shares(0);
  if (rule == claim_rule::cel) {
    cel_result cel = cel_rule(base);
    shares = cel.shares;
    result.loss = cel.loss;
    if (cel.degenerate)
      report.checks.push_back({prefix + "degenerate-estate", check_status::info,
                               "the campaign produced no benefit; every share is zero"});
  } else {
    shares = prop_rule(base);
  }
  for (int i = 0; i < problem.channel_count(); ++i)
    result.shares.emplace_back(problem.label(i), shares[i]);

  bankruptcy_order_report split_report = check_order_decomposition_bankruptcy(problem, rule);
  result.has_order_split = split_report.applicable;
  if (split_report.applicable) {
    order_split split = bankruptcy_order_extend(problem);
    allocation split_shares = rule == claim_rule::cel ? cel_rule(split.problem).shares
                                                      : prop_rule(split.problem);
    for (int id = 0; id < split.problem.claimant_count(); ++id)
      result.order_split.emplace_back(
          problem.label(split.players[static_cast<size_t>(id)].channel),
          split.players[static_cast<size_t>(id)].index, split_shares[id]);
    for (const auto& entry : split_report.channels)
      result.order_decomposition.emplace_back(problem.label(entry.channel), entry.merged_share,
                                              entry.split_share_total, entry.relation);
  }

  if (config.verify) {
    // EXC and CMR single out the equal-losses rule; for the proportional
    // rule their failures are expected and only reported.
    std::vector<std::string> soft =
        rule == claim_rule::prop ? std::vector<std::string>{"EXC", "CMR"}
                                 : std::vector<std::string>{};
    import_checks(report, check_rule_properties(base, rule), prefix, soft);

    if (split_report.applicable) {
      if (rule == claim_rule::prop) {
        add_check(report, "prop/order-decomposition", split_report.exact_decomposition, true,
                  "order-player shares rebuild each channel's share exactly");
      } else {
        std::string comparisons;
        for (const auto& entry : split_report.channels) {
          if (!comparisons.empty()) comparisons += "; ";
          comparisons += problem.label(entry.channel) + ": " +
                         to_fraction_string(entry.merged_share) + " " +
                         relation_text(entry.relation) + " " +
                         to_fraction_string(entry.split_share_total);
        }
        report.checks.push_back(
            {"cel/order-decomposition", check_status::info, comparisons});
        if (split_report.relevance_hypothesis) {
          add_check(report, "cel/order-decomposition-condition", split_report.condition_matches,
                    true, "share drops exactly when the position share exceeds the mean");
        } else {
          std::string who;
          for (const auto& label : split_report.irrelevant_claimants) {
            if (!who.empty()) who += ", ";
            who += label;
          }
          report.checks.push_back({"cel/order-decomposition-condition", check_status::info,
                                   "hypothesis not met; irrelevant claimants: " + who});
        }
      }
    } else if (!split_report.repeating_paths.empty()) {
      report.checks.push_back({prefix + "order-decomposition", check_status::info,
                               "not applicable: some paths repeat a channel"});
    }
  }
}

}  // namespace

const char* rule_name(rule_id id) {
  for (const auto& entry : kRuleNames) {
    if (entry.id == id) return entry.name;
  }
  return "?";
}

std::optional<rule_id> rule_from_name(std::string_view name) {
  for (const auto& entry : kRuleNames) {
    if (name == entry.name) return entry.id;
  }
  return std::nullopt;
}

attribution_report build_report(const run_config& config, const attribution_problem& problem) {
  attribution_report report;
  report.problem = problem;
  combination_function kpi = aggregate_combinations(problem);

  std::vector<rule_id> rules;
  for (rule_id id : config.rules) {
    if (std::find(rules.begin(), rules.end(), id) == rules.end()) rules.push_back(id);
  }

  for (rule_id id : rules) {
    rule_result result;
    result.id = id;
    switch (id) {
      case rule_id::shapley:
        compute_shapley(config, problem, kpi, report, result);
        break;
      case rule_id::shapley_rep:
        compute_shapley_rep(config, problem, report, result);
        break;
      case rule_id::shapley_order:
        compute_shapley_order(config, problem, report, result);
        break;
      case rule_id::positions:
        compute_positions(config, problem, report, result);
        break;
      case rule_id::cel:
        compute_claims_rule(config, problem, kpi, claim_rule::cel, report, result);
        break;
      case rule_id::prop:
        compute_claims_rule(config, problem, kpi, claim_rule::prop, report, result);
        break;
    }
    report.rules.push_back(std::move(result));
  }
  return report;
}

namespace {

nlohmann::ordered_json rational_json(const rational& value, int precision) {
  rational v = value;
  v.canonicalize();
  nlohmann::ordered_json out;
  out["num"] = v.get_num().get_str();
  out["den"] = v.get_den().get_str();
  out["decimal"] = to_decimal_string(v, precision);
  return out;
}

const char* status_text(check_status status) {
  switch (status) {
    case check_status::pass: return "pass";
    case check_status::fail: return "fail";
    case check_status::info: return "info";
  }
  return "?";
}

}  // namespace

std::string render_json(const attribution_report& report, int precision) {
  nlohmann::ordered_json doc;
  doc["problem"]["channels"] = report.problem.channels;
  doc["problem"]["paths"] = report.problem.path_count();
  doc["problem"]["total_benefit"] = rational_json(report.problem.total_benefit, precision);

  doc["rules"] = nlohmann::ordered_json::object();
  for (const auto& rule : report.rules) {
    nlohmann::ordered_json entry;
    switch (rule.id) {
      case rule_id::shapley: {
        entry["shares"] = nlohmann::ordered_json::object();
        for (const auto& [label, value] : rule.shares)
          entry["shares"][label] = rational_json(value, precision);
        break;
      }
      case rule_id::shapley_rep: {
        entry["per_channel"] = nlohmann::ordered_json::object();
        for (const auto& [label, value] : rule.shares)
          entry["per_channel"][label] = rational_json(value, precision);
        entry["per_player"] = nlohmann::ordered_json::array();
        for (const auto& [label, occurrence, value] : rule.extended) {
          entry["per_player"].push_back({{"channel", label},
                                         {"occurrence", occurrence},
                                         {"value", rational_json(value, precision)}});
        }
        break;
      }
      case rule_id::shapley_order: {
        entry["per_position"] = nlohmann::ordered_json::array();
        for (const auto& [label, position, value] : rule.extended) {
          entry["per_position"].push_back({{"channel", label},
                                           {"position", position},
                                           {"value", rational_json(value, precision)}});
        }
        break;
      }
      case rule_id::positions: {
        entry["positions"] = nlohmann::ordered_json::array();
        for (const auto& [position, value] : rule.position_shares) {
          entry["positions"].push_back(
              {{"position", position}, {"value", rational_json(value, precision)}});
        }
        break;
      }
      case rule_id::cel:
      case rule_id::prop: {
        entry["shares"] = nlohmann::ordered_json::object();
        for (const auto& [label, value] : rule.shares)
          entry["shares"][label] = rational_json(value, precision);
        if (rule.loss) entry["loss"] = rational_json(*rule.loss, precision);
        if (rule.has_order_split) {
          entry["order_split"] = nlohmann::ordered_json::array();
          for (const auto& [label, position, value] : rule.order_split) {
            entry["order_split"].push_back({{"channel", label},
                                            {"position", position},
                                            {"value", rational_json(value, precision)}});
          }
          entry["order_decomposition"] = nlohmann::ordered_json::array();
          for (const auto& [label, merged, split_total, relation] : rule.order_decomposition) {
            entry["order_decomposition"].push_back(
                {{"channel", label},
                 {"merged", rational_json(merged, precision)},
                 {"split_total", rational_json(split_total, precision)},
                 {"relation", relation_text(relation)}});
          }
        }
        break;
      }
    }
    doc["rules"][rule_name(rule.id)] = std::move(entry);
  }

  doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& check : report.checks) {
    doc["checks"].push_back(
        {{"name", check.name}, {"status", status_text(check.status)}, {"witness", check.detail}});
  }
  return doc.dump(2) + "\n";
}

namespace {

void render_value_rows(std::ostream& out, const std::string& heading,
                       const std::vector<std::pair<std::string, rational>>& rows,
                       int precision) {
  size_t name_width = heading.size();
  size_t exact_width = 5;
  for (const auto& [name, value] : rows) {
    name_width = std::max(name_width, name.size());
    exact_width = std::max(exact_width, to_fraction_string(value).size());
  }
  out << "  " << heading;
  out << std::string(name_width - heading.size(), ' ') << "  exact";
  out << std::string(exact_width - 5, ' ') << "  decimal\n";
  for (const auto& [name, value] : rows) {
    std::string exact = to_fraction_string(value);
    out << "  " << name << std::string(name_width - name.size(), ' ') << "  " << exact
        << std::string(exact_width - exact.size(), ' ') << "  "
        << to_fixed_string(value, precision) << "\n";
  }
}

}  // namespace

std::string render_table(const attribution_report& report, int precision) {
  std::ostringstream out;
  out << "channels: " << report.problem.channel_count()
      << "  paths: " << report.problem.path_count()
      << "  total benefit: " << to_fraction_string(report.problem.total_benefit) << " ("
      << to_fixed_string(report.problem.total_benefit, precision) << ")\n";

  for (const auto& rule : report.rules) {
    out << "\nrule " << rule_name(rule.id) << "\n";
    if (rule.loss)
      out << "  loss: " << to_fraction_string(*rule.loss) << " ("
          << to_fixed_string(*rule.loss, precision) << ")\n";

    if (!rule.shares.empty()) render_value_rows(out, "channel", rule.shares, precision);

    if (!rule.position_shares.empty()) {
      std::vector<std::pair<std::string, rational>> rows;
      for (const auto& [position, value] : rule.position_shares)
        rows.emplace_back("position " + std::to_string(position), value);
      render_value_rows(out, "position", rows, precision);
    }

    if (!rule.extended.empty()) {
      std::vector<std::pair<std::string, rational>> rows;
      for (const auto& [label, index, value] : rule.extended) {
        char sep = rule.id == rule_id::shapley_rep ? '^' : '@';
        rows.emplace_back(label + sep + std::to_string(index), value);
      }
      out << (rule.id == rule_id::shapley_rep ? "  occurrence players\n" : "  position players\n");
      render_value_rows(out, "player", rows, precision);
    }

    if (rule.has_order_split) {
      std::vector<std::pair<std::string, rational>> rows;
      for (const auto& [label, position, value] : rule.order_split)
        rows.emplace_back(label + "@" + std::to_string(position), value);
      out << "  order split\n";
      render_value_rows(out, "player", rows, precision);
      out << "  order decomposition (merged vs split total)\n";
      for (const auto& [label, merged, split_total, relation] : rule.order_decomposition) {
        out << "    " << label << ": " << to_fraction_string(merged) << " "
            << relation_text(relation) << " " << to_fraction_string(split_total) << "\n";
      }
    }
  }

  if (!report.checks.empty()) {
    out << "\nchecks\n";
    for (const auto& check : report.checks) {
      out << "  [" << status_text(check.status) << "] " << check.name;
      if (!check.detail.empty()) out << ": " << check.detail;
      out << "\n";
    }
  }
  return out.str();
}

int run(const run_config& config, std::ostream& out, std::ostream& err) {
  if (config.rules.empty()) {
    err << "error: no attribution rule selected\n";
    return exit_usage;
  }
  if (config.precision < 1) {
    err << "error: precision must be at least 1\n";
    return exit_usage;
  }

  input_format format;
  if (config.format) {
    format = *config.format;
  } else {
    format = config.input_path.size() >= 5 &&
                     config.input_path.substr(config.input_path.size() - 5) == ".json"
                 ? input_format::json
                 : input_format::csv;
  }

  std::ifstream file(config.input_path);
  if (!file) {
    err << "error: cannot read '" << config.input_path << "'\n";
    return exit_usage;
  }

  attribution_report report;
  try {
    attribution_problem problem = parse_problem(file, format);
    report = build_report(config, problem);
  } catch (const parse_error& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_usage;
  } catch (const resource_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  out << (config.output == output_mode::json ? render_json(report, config.precision)
                                             : render_table(report, config.precision));
  return report.verification_failed ? exit_verification : exit_ok;
}

}  // namespace attrib
