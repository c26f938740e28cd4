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

#include "attrib/bankruptcy.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace attrib {

namespace {

int sign(const rational& value) { return value > 0 ? 1 : value < 0 ? -1 : 0; }

allocation apply_rule(const bankruptcy_problem& problem, claim_rule rule) {
  return rule == claim_rule::prop ? prop_rule(problem) : cel_rule(problem).shares;
}

}  // namespace

bankruptcy_problem::bankruptcy_problem(rational estate, std::vector<rational> claims,
                                       std::vector<std::string> labels)
    : estate_(std::move(estate)), claims_(std::move(claims)), labels_(std::move(labels)) {
  if (estate_ < 0) throw std::invalid_argument("estate must be nonnegative");
  rational total = 0;
  for (const auto& c : claims_) {
    if (c < 0) throw std::invalid_argument("claims must be nonnegative");
    total += c;
  }
  if (estate_ > total)
    throw std::invalid_argument("estate exceeds the total claims; not a bankruptcy problem");
  if (labels_.empty()) {
    for (size_t i = 0; i < claims_.size(); ++i) labels_.push_back(std::to_string(i + 1));
  } else if (labels_.size() != claims_.size()) {
    throw std::invalid_argument("one label per claimant required");
  }
}

rational bankruptcy_problem::total_claims() const {
  rational total = 0;
  for (const auto& c : claims_) total += c;
  return total;
}

rational bankruptcy_problem::max_claim() const {
  rational best = 0;
  for (const auto& c : claims_) best = std::max(best, c);
  return best;
}

bankruptcy_problem to_bankruptcy(const combination_function& kpi,
                                 std::vector<std::string> labels) {
  int n = kpi.universe_size();
  std::vector<rational> claims(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) claims[static_cast<size_t>(i)] = kpi.member_total(i);
  return bankruptcy_problem(kpi.total(), std::move(claims), std::move(labels));
}

allocation prop_rule(const bankruptcy_problem& problem) {
  allocation shares(problem.claimant_count());
  rational total = problem.total_claims();
  if (total == 0) return shares;  // estate is zero too
  for (int i = 0; i < problem.claimant_count(); ++i)
    shares[i] = problem.claim(i) * problem.estate() / total;
  return shares;
}

cel_result cel_rule(const bankruptcy_problem& problem) {
  cel_result result{allocation(problem.claimant_count()), rational(0),
                    problem.estate() == 0};
  int n = problem.claimant_count();
  if (n == 0) return result;

  // Claims in descending order; ties keep claimant order.
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return problem.claim(a) > problem.claim(b); });

  // With the k largest claimants active, the common loss is (sum_k - E)/k.
  // Walk k downward until the smallest active claim covers the loss; the
  // first such segment holds the exact solution.
  rational prefix = problem.total_claims();
  for (int k = n; k >= 1; --k) {
    rational loss = (prefix - problem.estate()) / k;
    if (loss <= problem.claim(order[static_cast<size_t>(k) - 1])) {
      result.loss = loss;
      break;
    }
    prefix -= problem.claim(order[static_cast<size_t>(k) - 1]);
  }

  for (int i = 0; i < n; ++i) {
    rational kept = problem.claim(i) - result.loss;
    result.shares[i] = kept > 0 ? kept : rational(0);
  }
  return result;
}

characteristic_function pessimistic_game(const bankruptcy_problem& problem) {
  int n = problem.claimant_count();
  rational estate = problem.estate();
  std::vector<rational> claims = problem.claims();
  return characteristic_function{n, [estate, claims](const player_set& coalition) {
                                   rational outside = 0;
                                   for (size_t i = 0; i < claims.size(); ++i) {
                                     if (!coalition.contains(static_cast<int>(i)))
                                       outside += claims[i];
                                   }
                                   rational worth = estate - outside;
                                   return worth > 0 ? worth : rational(0);
                                 }};
}

bool attribution_compatible(const rational& estate, const std::vector<rational>& claims) {
  if (estate < 0) return false;
  rational total = 0, largest = 0;
  for (const auto& c : claims) {
    if (c < 0) return false;
    total += c;
    largest = std::max(largest, c);
  }
  return total >= estate && estate >= largest;
}

combination_function construct_kpi_witness(const bankruptcy_problem& problem) {
  if (!attribution_compatible(problem.estate(), problem.claims()))
    throw std::invalid_argument(
        "not attribution compatible: the estate must cover the largest claim");

  int n = problem.claimant_count();
  combination_function witness(n);
  if (n == 0) return witness;

  // Ascending claims, ties by claimant index.
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return problem.claim(a) < problem.claim(b); });

  // Peels the largest claimant off a compatible (estate, first k claims)
  // problem. Splitting on which term realizes max{c_k - c_{k-1},
  // E - sum of the others}: the first keeps claimant k out of all smaller
  // combinations except those holding claimant k-1; the second settles
  // everyone alone, with the pair {k-1, k} absorbing the deficit.
  std::function<std::map<player_set, rational>(int, const rational&)> build =
      [&](int k, const rational& estate) -> std::map<player_set, rational> {
    std::map<player_set, rational> out;
    if (k == 1) {
      if (estate != 0) out[player_set::single(order[0])] = estate;
      return out;
    }
    if (k == 2) {
      const rational& low = problem.claim(order[0]);
      const rational& high = problem.claim(order[1]);
      rational alone_low = estate - high;
      rational alone_high = estate - low;
      rational together = low + high - estate;
      if (alone_low != 0) out[player_set::single(order[0])] = alone_low;
      if (alone_high != 0) out[player_set::single(order[1])] = alone_high;
      if (together != 0) {
        player_set pair = player_set::single(order[0]);
        pair.insert(order[1]);
        out[pair] = together;
      }
      return out;
    }

    int last = order[static_cast<size_t>(k) - 1];
    int prev = order[static_cast<size_t>(k) - 2];
    rational sum_rest = 0;
    for (int r = 0; r < k - 2; ++r) sum_rest += problem.claim(order[static_cast<size_t>(r)]);
    rational gap = problem.claim(last) - problem.claim(prev);
    rational slack = estate - (sum_rest + problem.claim(prev));

    if (gap >= slack) {
      auto sub = build(k - 1, estate - gap);
      for (auto& [combination, value] : sub) {
        if (combination.contains(prev)) {
          player_set lifted = combination;
          lifted.insert(last);
          out.emplace(std::move(lifted), std::move(value));
        } else {
          out.emplace(combination, std::move(value));
        }
      }
      if (gap != 0) out.emplace(player_set::single(last), gap);
    } else {
      rational deficit = sum_rest + problem.claim(prev) + problem.claim(last) - estate;
      out.emplace(player_set::single(last), slack);
      for (int r = 0; r < k - 2; ++r) {
        int claimant = order[static_cast<size_t>(r)];
        if (problem.claim(claimant) != 0)
          out.emplace(player_set::single(claimant), problem.claim(claimant));
      }
      rational prev_alone = problem.claim(prev) - deficit;
      if (prev_alone != 0) out.emplace(player_set::single(prev), prev_alone);
      if (deficit != 0) {
        player_set pair = player_set::single(prev);
        pair.insert(last);
        out.emplace(std::move(pair), deficit);
      }
    }
    return out;
  };

  for (auto& [combination, value] : build(n, problem.estate()))
    witness.add(combination, value);
  return witness;
}

attribution_compatibility check_attribution_compatible(const bankruptcy_problem& problem) {
  attribution_compatibility result;
  result.compatible = attribution_compatible(problem.estate(), problem.claims());
  if (result.compatible) result.witness = construct_kpi_witness(problem);
  return result;
}

std::vector<rational> minimal_rights(const bankruptcy_problem& problem) {
  rational total = problem.total_claims();
  std::vector<rational> rights(static_cast<size_t>(problem.claimant_count()));
  for (int i = 0; i < problem.claimant_count(); ++i) {
    rational leftover = problem.estate() - (total - problem.claim(i));
    rights[static_cast<size_t>(i)] = leftover > 0 ? leftover : rational(0);
  }
  return rights;
}

check_report check_rule_properties(const bankruptcy_problem& problem, claim_rule rule) {
  check_report report;
  allocation shares = apply_rule(problem, rule);
  int n = problem.claimant_count();

  {
    bool ok = true;
    std::string witness;
    for (int i = 0; i < n; ++i) {
      if (shares[i] < 0 || shares[i] > problem.claim(i)) {
        ok = false;
        witness = "claimant " + problem.label(i) + " awarded " + to_fraction_string(shares[i]) +
                  " on claim " + to_fraction_string(problem.claim(i));
        break;
      }
    }
    report.add("IND", ok, witness);
  }

  {
    rational paid = shares.sum();
    report.add("EFF", paid == problem.estate(),
               paid == problem.estate() ? ""
                                        : "awarded " + to_fraction_string(paid) + " of estate " +
                                              to_fraction_string(problem.estate()));
  }

  {
    bool ok = true;
    std::string witness;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = i + 1; j < n && ok; ++j) {
        if (problem.claim(i) == problem.claim(j) && shares[i] != shares[j]) {
          ok = false;
          witness = "equal claimants " + problem.label(i) + "," + problem.label(j) +
                    " awarded " + to_fraction_string(shares[i]) + " vs " +
                    to_fraction_string(shares[j]);
        }
      }
    }
    report.add("ETE", ok, witness);
  }

  {
    bool ok = true;
    std::string witness;
    if (n > 0) {
      rational threshold = problem.deficit() / n;
      for (int i = 0; i < n; ++i) {
        if (problem.claim(i) <= threshold && shares[i] != 0) {
          ok = false;
          witness = "claimant " + problem.label(i) + " claims " +
                    to_fraction_string(problem.claim(i)) + " <= D/n = " +
                    to_fraction_string(threshold) + " yet receives " +
                    to_fraction_string(shares[i]);
          break;
        }
      }
    }
    report.add("EXC", ok, witness);
  }

  {
    std::vector<rational> rights = minimal_rights(problem);
    rational granted = 0;
    for (const auto& m : rights) granted += m;
    std::vector<rational> residual_claims(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
      residual_claims[static_cast<size_t>(i)] = problem.claim(i) - rights[static_cast<size_t>(i)];

    bool ok = true;
    std::string witness;
    if (problem.estate() - granted < 0) {
      ok = false;
      witness = "minimal rights exceed the estate";
    } else {
      bankruptcy_problem residual(problem.estate() - granted, residual_claims, problem.labels());
      allocation after = apply_rule(residual, rule);
      for (int i = 0; i < n; ++i) {
        if (shares[i] != rights[static_cast<size_t>(i)] + after[i]) {
          ok = false;
          witness = "claimant " + problem.label(i) + ": " + to_fraction_string(shares[i]) +
                    " != " + to_fraction_string(rights[static_cast<size_t>(i)]) + " + " +
                    to_fraction_string(after[i]);
          break;
        }
      }
      if (attribution_compatible(problem.estate(), problem.claims())) {
        report.add("CMR-class-closure",
                   attribution_compatible(residual.estate(), residual.claims()),
                   "minimal-rights reduction of an attribution problem");
      } else {
        report.note("CMR-class-closure", "not an attribution problem; closure not applicable");
      }
    }
    report.add("CMR", ok, witness);
  }

  return report;
}

irrelevance_reduction reduce_irrelevant(const bankruptcy_problem& problem, claim_rule rule) {
  allocation shares = apply_rule(problem, rule);

  std::vector<int> removed, kept;
  std::vector<rational> reduced_claims;
  std::vector<std::string> reduced_labels;
  for (int i = 0; i < problem.claimant_count(); ++i) {
    if (shares[i] == 0) {
      removed.push_back(i);
    } else {
      kept.push_back(i);
      reduced_claims.push_back(problem.claim(i));
      reduced_labels.push_back(problem.label(i));
    }
  }

  irrelevance_reduction result{
      bankruptcy_problem(problem.estate(), std::move(reduced_claims), std::move(reduced_labels)),
      std::move(removed), kept, allocation(0), false};
  result.reduced_shares = apply_rule(result.reduced, rule);
  result.shares_preserved = true;
  for (size_t pos = 0; pos < kept.size(); ++pos) {
    if (result.reduced_shares[static_cast<int>(pos)] != shares[kept[pos]]) {
      result.shares_preserved = false;
      break;
    }
  }
  return result;
}

namespace {

std::vector<int> find_repeating_paths(const attribution_problem& problem) {
  std::vector<int> repeating;
  for (int p = 0; p < problem.path_count(); ++p) {
    const auto& path = problem.paths[static_cast<size_t>(p)];
    if (visited_channels(path).size() != static_cast<int>(path.size())) repeating.push_back(p);
  }
  return repeating;
}

}  // namespace

order_split bankruptcy_order_extend(const attribution_problem& problem) {
  std::vector<int> repeating = find_repeating_paths(problem);
  if (!repeating.empty())
    throw std::invalid_argument(
        "order claim split needs repetition-free paths; path #" +
        std::to_string(repeating.front()) + " repeats a channel");

  extended_problem ext = order_extend(problem);
  std::vector<rational> claims(static_cast<size_t>(ext.player_count()), rational(0));
  for (int p = 0; p < problem.path_count(); ++p) {
    const auto& path = problem.paths[static_cast<size_t>(p)];
    for (size_t j = 0; j < path.size(); ++j) {
      int id = ext.player_id(path[j], static_cast<int>(j) + 1);
      claims[static_cast<size_t>(id)] += problem.kpis[static_cast<size_t>(p)];
    }
  }

  order_split out{bankruptcy_problem(total_benefit(problem), std::move(claims),
                                     ext.player_labels),
                  ext.players,
                  std::vector<std::vector<int>>(static_cast<size_t>(problem.channel_count()))};
  for (size_t id = 0; id < ext.players.size(); ++id)
    out.claimants_of_channel[static_cast<size_t>(ext.players[id].channel)].push_back(
        static_cast<int>(id));
  return out;
}

bankruptcy_order_report check_order_decomposition_bankruptcy(const attribution_problem& problem,
                                                             claim_rule rule) {
  bankruptcy_order_report report;
  report.rule = rule;
  report.repeating_paths = find_repeating_paths(problem);
  report.applicable = report.repeating_paths.empty();
  if (!report.applicable) return report;

  bankruptcy_problem base = to_bankruptcy(aggregate_combinations(problem), problem.channels);
  order_split split = bankruptcy_order_extend(problem);
  allocation merged = apply_rule(base, rule);
  allocation split_shares = apply_rule(split.problem, rule);

  report.exact_decomposition = true;
  for (int channel = 0; channel < problem.channel_count(); ++channel) {
    rational total = 0;
    for (int id : split.claimants_of_channel[static_cast<size_t>(channel)])
      total += split_shares[id];
    int relation = sign(merged[channel] - total);
    if (relation != 0) report.exact_decomposition = false;
    report.channels.push_back(
        {channel, merged[channel], total,
         relation,
         static_cast<int>(split.claimants_of_channel[static_cast<size_t>(channel)].size())});
  }

  if (rule == claim_rule::cel) {
    report.relevance_hypothesis = true;
    for (int channel = 0; channel < problem.channel_count(); ++channel) {
      if (merged[channel] == 0) {
        report.relevance_hypothesis = false;
        report.irrelevant_claimants.push_back(base.label(channel));
      }
    }
    for (int id = 0; id < split.problem.claimant_count(); ++id) {
      if (split_shares[id] == 0) {
        report.relevance_hypothesis = false;
        report.irrelevant_claimants.push_back(split.problem.label(id));
      }
    }
    if (report.relevance_hypothesis) {
      // The split share drops exactly when the channel's slice of the order
      // players exceeds the mean 1/n, with equality in the balanced case.
      int total_positions = split.problem.claimant_count();
      report.condition_matches = true;
      for (const auto& entry : report.channels) {
        int expected = sign(rational(entry.order_player_count * problem.channel_count() -
                                     total_positions));
        if (entry.relation != expected) {
          report.condition_matches = false;
          break;
        }
      }
    }
  }
  return report;
}

bankruptcy_monotonicity_report check_repetition_monotonicity_bankruptcy(
    const attribution_problem& problem, int path_index, int channel, claim_rule rule) {
  if (path_index < 0 || path_index >= problem.path_count())
    throw std::invalid_argument("path index out of range");
  if (occurrences(problem.paths[static_cast<size_t>(path_index)], channel) == 0)
    throw std::invalid_argument("channel '" + problem.label(channel) +
                                "' does not occur in the selected path");

  bankruptcy_problem base = to_bankruptcy(aggregate_combinations(problem), problem.channels);
  const rational& path_benefit = problem.kpis[static_cast<size_t>(path_index)];

  // The repeated channel splits into one claimant keeping the old claim and
  // one claiming just the modified path's benefit; the estate is unchanged.
  std::vector<rational> claims = base.claims();
  std::vector<std::string> labels = base.labels();
  claims.push_back(path_benefit);
  labels.push_back(problem.label(channel) + "'");
  bankruptcy_problem split(base.estate(), std::move(claims), std::move(labels));

  bankruptcy_monotonicity_report report;
  report.rule = rule;
  report.merged_share = apply_rule(base, rule)[channel];
  allocation after = apply_rule(split, rule);
  report.kept_share = after[channel];
  report.repeat_share = after[split.claimant_count() - 1];
  report.holds = report.merged_share <= report.kept_share + report.repeat_share;
  return report;
}

}  // namespace attrib
