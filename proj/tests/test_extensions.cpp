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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>

#include "attrib/extensions.hpp"
#include "testutil.hpp"

using namespace attrib;

namespace {

attribution_problem load_fixture(const std::string& name) {
  std::ifstream file(std::string(ATTRIB_FIXTURE_DIR) + "/" + name);
  REQUIRE(file.good());
  return parse_problem(file, input_format::csv);
}

player_set ids(const extended_problem& ext, std::initializer_list<std::pair<int, int>> pairs) {
  player_set s;
  for (const auto& [channel, index] : pairs) {
    int id = ext.player_id(channel, index);
    REQUIRE(id >= 0);
    s.insert(id);
  }
  return s;
}

// Per-channel totals of a brute-force Shapley run on an extended game.
allocation channel_totals_by_bruteforce(const attribution_problem& problem,
                                        const extended_problem& ext) {
  allocation per_player =
      shapley_bruteforce(sum_game(ext.kpi), player_set::full(ext.player_count()));
  allocation totals(problem.channel_count());
  for (int id = 0; id < ext.player_count(); ++id)
    totals[ext.players[static_cast<size_t>(id)].channel] += per_player[id];
  return totals;
}

}  // namespace

TEST_CASE("occurrence players of the repeated-channel campaign") {
  attribution_problem p = load_fixture("table1.csv");
  extended_problem ext = repetition_extend(p);
  REQUIRE(ext.player_count() == 3);
  CHECK(ext.player_labels == std::vector<std::string>{"1^1", "2^1", "2^2"});

  int one = p.channel_index("1");
  int two = p.channel_index("2");
  CHECK(ext.kpi.value(ids(ext, {{one, 1}})) == 20);
  CHECK(ext.kpi.value(ids(ext, {{one, 1}, {two, 1}})) == 50);
  CHECK(ext.kpi.value(ids(ext, {{one, 1}, {two, 1}, {two, 2}})) == 30);
  CHECK(ext.kpi.support().size() == 3);
  CHECK(ext.kpi.total() == p.total_benefit);
  CHECK(ext.player_id(two, 3) == -1);
}

TEST_CASE("a repetition-free log extends to itself") {
  attribution_problem p = load_fixture("table3.csv");
  extended_problem ext = repetition_extend(p);
  // one occurrence player per channel, in channel order
  CHECK(ext.player_count() == p.channel_count());
  CHECK(ext.kpi.support() == aggregate_combinations(p).support());
}

TEST_CASE("a self-repeating path maps to the occurrence pair") {
  attribution_problem p = parse_problem_text("a>a,12\n", input_format::csv);
  extended_problem ext = repetition_extend(p);
  REQUIRE(ext.player_count() == 2);
  CHECK(ext.kpi.value(ids(ext, {{0, 1}, {0, 2}})) == 12);
}

TEST_CASE("repetition-aware attribution of the repeated-channel campaign") {
  attribution_problem p = load_fixture("table1.csv");
  allocation shares = shapley_repetition(p);
  CHECK(shares[p.channel_index("1")] == 55);
  CHECK(shares[p.channel_index("2")] == 45);
  // the repetition lifted channel 2 above its plain value
  CHECK(shapley_sum_game(aggregate_combinations(p))[p.channel_index("2")] == 40);
}

TEST_CASE("single channel keeps the whole path benefit") {
  attribution_problem p = parse_problem_text("a>a>a,9\n", input_format::csv);
  CHECK(shapley_repetition(p)[0] == 9);
}

TEST_CASE("closed form equals brute force on the occurrence game") {
  attribution_problem table1 = load_fixture("table1.csv");
  CHECK(shapley_repetition(table1) ==
        channel_totals_by_bruteforce(table1, repetition_extend(table1)));

  std::mt19937_64 rng(67);
  testutil::problem_options small{3, 4, 4, true};
  for (int round = 0; round < 60; ++round) {
    attribution_problem p = testutil::random_problem(rng, small);
    extended_problem ext = repetition_extend(p);
    REQUIRE(ext.player_count() <= 12);
    CHECK(shapley_repetition(p) == channel_totals_by_bruteforce(p, ext));

    // per-player closed form equals brute force too
    CHECK(shapley_sum_game(ext.kpi) ==
          shapley_bruteforce(sum_game(ext.kpi), player_set::full(ext.player_count())));
  }
}

TEST_CASE("repetition never hurts under the repetition-aware rule") {
  attribution_problem p = load_fixture("table1.csv");
  int path_12 = 1;  // sorted paths: (1), (1,2), (2,1), (2,1,2)
  REQUIRE(p.paths[static_cast<size_t>(path_12)].size() == 2);
  auto report = check_repetition_monotonicity(p, path_12, p.channel_index("2"),
                                              shapley_rule::repetition_aware);
  CHECK(report.non_decreasing);
  CHECK(report.modified_path.size() == 3);

  // repeating the only channel of a path leaves its weight at 1
  attribution_problem solo = parse_problem_text("a,5\n", input_format::csv);
  auto unchanged = check_repetition_monotonicity(solo, 0, 0, shapley_rule::repetition_aware);
  CHECK(unchanged.before == unchanged.after);

  std::mt19937_64 rng(71);
  for (int round = 0; round < 1000; ++round) {
    attribution_problem q = testutil::random_problem(rng, {4, 5, 4, true});
    int path = testutil::pick(rng, 0, q.path_count() - 1);
    const auto& sequence = q.paths[static_cast<size_t>(path)];
    int channel = sequence[static_cast<size_t>(
        testutil::pick(rng, 0, static_cast<int>(sequence.size()) - 1))];
    auto random_report =
        check_repetition_monotonicity(q, path, channel, shapley_rule::repetition_aware);
    CHECK(random_report.non_decreasing);
  }
}

TEST_CASE("monotonicity checks validate their inputs") {
  attribution_problem p = load_fixture("table3.csv");
  CHECK_THROWS_AS(check_repetition_monotonicity(p, 99, 0, shapley_rule::repetition_aware),
                  std::invalid_argument);
  // channel "2" is absent from path (1)
  CHECK_THROWS_AS(
      check_repetition_monotonicity(p, 0, p.channel_index("2"), shapley_rule::repetition_aware),
      std::invalid_argument);
}

TEST_CASE("position players of the order campaign") {
  attribution_problem p = load_fixture("table3.csv");
  extended_problem ext = order_extend(p);
  REQUIRE(ext.player_count() == 4);
  CHECK(ext.player_labels == std::vector<std::string>{"1@1", "1@2", "2@1", "2@2"});

  int one = p.channel_index("1");
  int two = p.channel_index("2");
  CHECK(ext.kpi.value(ids(ext, {{one, 1}})) == 30);
  CHECK(ext.kpi.value(ids(ext, {{one, 1}, {two, 2}})) == 60);
  CHECK(ext.kpi.value(ids(ext, {{one, 2}, {two, 1}})) == 10);
  CHECK(ext.kpi.total() == 100);
}

TEST_CASE("order extension of a single path") {
  attribution_problem p = parse_problem_text("a,20\n", input_format::csv);
  extended_problem ext = order_extend(p);
  REQUIRE(ext.player_count() == 1);
  CHECK(ext.player_labels[0] == "a@1");
  CHECK(ext.kpi.value(player_set::single(0)) == 20);
}

TEST_CASE("a repeated channel occupies two positions") {
  attribution_problem p = parse_problem_text("a>b>a,6\n", input_format::csv);
  extended_problem ext = order_extend(p);
  REQUIRE(ext.player_count() == 3);
  int a = p.channel_index("a");
  int b = p.channel_index("b");
  CHECK(ext.kpi.value(ids(ext, {{a, 1}, {b, 2}, {a, 3}})) == 6);
}

TEST_CASE("per-position attribution of the order campaign") {
  attribution_problem p = load_fixture("table3.csv");
  auto values = shapley_order(p);
  int one = p.channel_index("1");
  int two = p.channel_index("2");
  CHECK(values.at({one, 1}) == 60);
  CHECK(values.at({one, 2}) == 5);
  CHECK(values.at({two, 1}) == 5);
  CHECK(values.at({two, 2}) == 30);
  CHECK(values.count({two, 3}) == 0);  // never observed: worth 0
}

TEST_CASE("per-position attribution equals brute force on the order game") {
  std::mt19937_64 rng(73);
  testutil::problem_options small{3, 4, 4, true};
  for (int round = 0; round < 60; ++round) {
    attribution_problem p = testutil::random_problem(rng, small);
    extended_problem ext = order_extend(p);
    REQUIRE(ext.player_count() <= 12);
    allocation oracle =
        shapley_bruteforce(sum_game(ext.kpi), player_set::full(ext.player_count()));
    auto values = shapley_order(p);
    for (int id = 0; id < ext.player_count(); ++id) {
      const auto& player = ext.players[static_cast<size_t>(id)];
      auto it = values.find({player.channel, player.index});
      rational closed_form = it == values.end() ? rational(0) : it->second;
      CHECK(closed_form == oracle[id]);
    }
  }
}

TEST_CASE("order decomposition rebuilds the plain value") {
  attribution_problem p = load_fixture("table3.csv");
  order_decomposition_report report = check_order_decomposition(p);
  CHECK(report.applicable);
  CHECK(report.holds);
  REQUIRE(report.channels.size() == 2);
  CHECK(report.channels[0].plain_value == 65);
  CHECK(report.channels[0].position_total == 65);
  CHECK(report.channels[1].plain_value == 35);
  CHECK(report.channels[1].position_total == 35);

  attribution_problem solo = parse_problem_text("a,20\n", input_format::csv);
  order_decomposition_report trivial = check_order_decomposition(solo);
  CHECK(trivial.applicable);
  CHECK(trivial.holds);

  std::mt19937_64 rng(79);
  for (int round = 0; round < 200; ++round) {
    attribution_problem q = testutil::random_problem(rng, {6, 8, 4, false});
    order_decomposition_report random_report = check_order_decomposition(q);
    CHECK(random_report.applicable);
    CHECK(random_report.holds);
  }
}

TEST_CASE("order decomposition reports repeating paths") {
  attribution_problem p = load_fixture("table1.csv");
  order_decomposition_report report = check_order_decomposition(p);
  CHECK(!report.applicable);
  // sorted paths put (2,1,2) last
  CHECK(report.repeating_paths == std::vector<int>{3});
  CHECK(!report.holds);
}

TEST_CASE("worth of each position") {
  attribution_problem p = load_fixture("table3.csv");
  auto positions = position_attribution(p);
  REQUIRE(positions.size() == 2);
  CHECK(positions.at(1) == 65);
  CHECK(positions.at(2) == 35);

  attribution_problem flat = parse_problem_text("a,3\nb,4\n", input_format::csv);
  auto single = position_attribution(flat);
  REQUIRE(single.size() == 1);
  CHECK(single.at(1) == 7);

  attribution_problem table5 = load_fixture("table5.csv");
  auto three = position_attribution(table5);
  CHECK(three.at(1) == 55);
  CHECK(three.at(2) == 35);
  CHECK(three.at(3) == 10);
}

TEST_CASE("both extensions distribute exactly the total benefit") {
  std::mt19937_64 rng(83);
  for (int round = 0; round < 300; ++round) {
    attribution_problem p = testutil::random_problem(rng);
    CHECK(shapley_repetition(p).sum() == p.total_benefit);

    rational order_total = 0;
    for (const auto& [key, value] : shapley_order(p)) order_total += value;
    CHECK(order_total == p.total_benefit);

    rational position_total = 0;
    for (const auto& [position, value] : position_attribution(p)) position_total += value;
    CHECK(position_total == p.total_benefit);

    CHECK(repetition_extend(p).kpi.total() == p.total_benefit);
    CHECK(order_extend(p).kpi.total() == p.total_benefit);
  }
}

TEST_CASE("repetition-aware rule is additive across campaigns") {
  std::mt19937_64 rng(89);
  for (int round = 0; round < 100; ++round) {
    testutil::problem_options opt{4, 6, 4, true};
    attribution_problem p1 = testutil::random_problem(rng, opt);
    attribution_problem p2 = testutil::random_problem(rng, opt);

    std::vector<problem_row> combined = to_rows(p1);
    for (auto& row : to_rows(p2)) combined.push_back(std::move(row));
    // shared channel universe so per-channel indices line up
    std::vector<std::string> all_channels = p1.channels;
    all_channels.insert(all_channels.end(), p2.channels.begin(), p2.channels.end());
    attribution_problem joint = make_problem(combined, all_channels);

    allocation a1 = shapley_repetition(p1);
    allocation a2 = shapley_repetition(p2);
    allocation sum = shapley_repetition(joint);
    for (int i = 0; i < joint.channel_count(); ++i) {
      rational expected = 0;
      int in1 = p1.channel_index(joint.label(i));
      int in2 = p2.channel_index(joint.label(i));
      if (in1 >= 0) expected += a1[in1];
      if (in2 >= 0) expected += a2[in2];
      CHECK(sum[i] == expected);
    }
  }
}

TEST_CASE("repetition-aware rule treats mirrored channels equally") {
  std::mt19937_64 rng(97);
  for (int round = 0; round < 100; ++round) {
    // a log over a few channels, mirrored under the a<->b relabeling
    testutil::problem_options opt{4, 5, 4, true};
    attribution_problem base = testutil::random_problem(rng, opt);
    std::vector<problem_row> rows = to_rows(base);
    std::vector<problem_row> mirrored = rows;
    for (auto& [sequence, kpi] : mirrored) {
      for (auto& label : sequence) {
        if (label == "a")
          label = "b";
        else if (label == "b")
          label = "a";
      }
    }
    rows.insert(rows.end(), mirrored.begin(), mirrored.end());
    attribution_problem symmetric = make_problem(rows, {"a", "b"});
    allocation shares = shapley_repetition(symmetric);
    CHECK(shares[symmetric.channel_index("a")] == shares[symmetric.channel_index("b")]);
  }
}
