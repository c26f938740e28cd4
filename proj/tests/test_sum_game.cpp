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

#include <random>

#include "attrib/errors.hpp"
#include "attrib/sum_game.hpp"
#include "testutil.hpp"

using namespace attrib;

namespace {

player_set set_of(std::initializer_list<int> players) {
  player_set s;
  for (int p : players) s.insert(p);
  return s;
}

// Occurrence-player game of the repeated-channel campaign:
// ids 0 = first channel, 1 = second channel's first occurrence, 2 = its second.
combination_function occurrence_game() {
  combination_function f(3);
  f.add(set_of({0}), 20);
  f.add(set_of({0, 1}), 50);
  f.add(set_of({0, 1, 2}), 30);
  return f;
}

// Position-player game of the order campaign:
// ids 0 = a@1, 1 = a@2, 2 = b@1, 3 = b@2.
combination_function position_game() {
  combination_function f(4);
  f.add(set_of({0}), 30);
  f.add(set_of({0, 3}), 60);
  f.add(set_of({1, 2}), 10);
  return f;
}

}  // namespace

TEST_CASE("coalition worth sums the combinations inside") {
  characteristic_function v = sum_game(occurrence_game());
  CHECK(v(player_set{}) == 0);
  CHECK(v(set_of({0})) == 20);
  CHECK(v(set_of({1})) == 0);
  CHECK(v(set_of({2})) == 0);
  CHECK(v(set_of({0, 1})) == 70);
  CHECK(v(set_of({0, 2})) == 20);
  CHECK(v(set_of({1, 2})) == 0);
  CHECK(v(set_of({0, 1, 2})) == 100);

  characteristic_function vo = sum_game(position_game());
  CHECK(vo(set_of({0, 3})) == 90);
  CHECK(vo(set_of({0, 2})) == 30);
  CHECK(vo(set_of({1, 2})) == 10);
  CHECK(vo(set_of({0, 2, 3})) == 90);
  CHECK(vo(player_set::full(4)) == 100);
}

TEST_CASE("worth is monotone and convex on random benefit functions") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 100; ++round) {
    int n = testutil::pick(rng, 1, 8);
    combination_function f = testutil::random_combination_function(rng, n, 12);
    characteristic_function v = sum_game(f);
    for (int trial = 0; trial < 10; ++trial) {
      std::uint64_t all = (std::uint64_t{1} << n) - 1;
      std::uint64_t s_mask = rng() & all, t_mask = rng() & all;
      player_set s, t;
      for (int i = 0; i < n; ++i) {
        if (s_mask >> i & 1) s.insert(i);
        if (t_mask >> i & 1) t.insert(i);
      }
      CHECK(v(s.intersected(t)) <= v(s));
      CHECK(v(s) <= v(s.united(t)));
      CHECK(v(s.united(t)) + v(s.intersected(t)) >= v(s) + v(t));
    }
  }
}

TEST_CASE("dividends of a sum game are the benefit function itself") {
  combination_function f = occurrence_game();
  combination_function d = harsanyi_dividends(sum_game(f), player_set::full(3));
  CHECK(d == f);

  std::mt19937_64 rng(37);
  for (int round = 0; round < 100; ++round) {
    int n = testutil::pick(rng, 1, 8);
    combination_function random = testutil::random_combination_function(rng, n, 20);
    CHECK(harsanyi_dividends(sum_game(random), player_set::full(n)) == random);
  }
}

TEST_CASE("dividend recursion agrees with inclusion-exclusion") {
  characteristic_function v = sum_game(position_game());
  combination_function d = harsanyi_dividends(v, player_set::full(4));
  CHECK(d.value(set_of({0, 3})) == 60);  // 90 - 30 - 0

  std::mt19937_64 rng(41);
  for (int round = 0; round < 20; ++round) {
    int n = testutil::pick(rng, 1, 5);
    // arbitrary (not totally positive) games: random worths, zero on empty
    std::map<player_set, rational> worths;
    std::vector<int> all(static_cast<size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      player_set s;
      for (int i = 0; i < n; ++i) {
        if (mask >> i & 1) s.insert(i);
      }
      worths[s] = rational(testutil::pick(rng, -20, 20), testutil::pick(rng, 1, 3));
      worths[s].canonicalize();
    }
    characteristic_function game{n, [worths](const player_set& s) {
                                   auto it = worths.find(s);
                                   return it == worths.end() ? rational(0) : it->second;
                                 }};
    combination_function d2 = harsanyi_dividends(game, player_set::full(n));
    for (const auto& [s, worth] : worths)
      CHECK(d2.value(s) == testutil::inclusion_exclusion_dividend(game, s));
  }
}

TEST_CASE("unanimity game dividends") {
  player_set carrier = set_of({0, 2});
  characteristic_function unanimity{3, [carrier](const player_set& s) {
                                      return carrier.subset_of(s) ? rational(1) : rational(0);
                                    }};
  combination_function d = harsanyi_dividends(unanimity, player_set::full(3));
  CHECK(d.support().size() == 1);
  CHECK(d.value(carrier) == 1);
}

TEST_CASE("dividend cap raises a resource error") {
  characteristic_function v = sum_game(occurrence_game());
  CHECK_THROWS_AS(harsanyi_dividends(v, player_set::full(3), 2), resource_error);
}

TEST_CASE("brute-force value of the occurrence game") {
  allocation shapley = shapley_bruteforce(sum_game(occurrence_game()), player_set::full(3));
  CHECK(shapley[0] == 55);
  CHECK(shapley[1] == 35);
  CHECK(shapley[2] == 10);
}

TEST_CASE("brute-force trivial games") {
  combination_function solo(1);
  solo.add(player_set::single(0), 20);
  CHECK(shapley_bruteforce(sum_game(solo), player_set::full(1))[0] == 20);

  combination_function symmetric(2);
  symmetric.add(set_of({0, 1}), 10);
  allocation split = shapley_bruteforce(sum_game(symmetric), player_set::full(2));
  CHECK(split[0] == 5);
  CHECK(split[1] == 5);

  CHECK_THROWS_AS(shapley_bruteforce(sum_game(occurrence_game()), player_set::full(3), 2),
                  resource_error);
}

TEST_CASE("closed-form value of the sum game") {
  combination_function f(2);
  f.add(player_set::single(0), 20);
  f.add(set_of({0, 1}), 80);
  allocation shapley = shapley_sum_game(f);
  CHECK(shapley[0] == 60);
  CHECK(shapley[1] == 40);

  combination_function one_combo(3);
  one_combo.add(set_of({0, 1, 2}), 30);
  allocation equal = shapley_sum_game(one_combo);
  CHECK(equal[0] == 10);
  CHECK(equal[1] == 10);
  CHECK(equal[2] == 10);

  allocation order = shapley_sum_game(position_game());
  CHECK(order[0] == 60);
  CHECK(order[1] == 5);
  CHECK(order[2] == 5);
  CHECK(order[3] == 30);
}

TEST_CASE("closed form equals the brute-force oracle") {
  std::mt19937_64 rng(43);
  for (int round = 0; round < 150; ++round) {
    int n = testutil::pick(rng, 1, 8);
    combination_function f = testutil::random_combination_function(rng, n, 12);
    CHECK(shapley_sum_game(f) == shapley_bruteforce(sum_game(f), player_set::full(n)));
  }
}

TEST_CASE("efficiency and additivity") {
  std::mt19937_64 rng(47);
  for (int round = 0; round < 100; ++round) {
    int n = testutil::pick(rng, 1, 8);
    combination_function f1 = testutil::random_combination_function(rng, n, 10);
    combination_function f2 = testutil::random_combination_function(rng, n, 10);
    allocation a1 = shapley_sum_game(f1);
    allocation a2 = shapley_sum_game(f2);
    CHECK(a1.sum() == f1.total());

    allocation joint = shapley_sum_game(merge(f1, f2));
    for (int i = 0; i < n; ++i) CHECK(joint[i] == a1[i] + a2[i]);
  }
}

TEST_CASE("coalition payoff") {
  allocation order = shapley_sum_game(position_game());
  CHECK(coalition_payoff(order, set_of({0, 1})) == 65);
  CHECK(coalition_payoff(order, player_set{}) == 0);

  allocation rep = shapley_sum_game(occurrence_game());
  CHECK(coalition_payoff(rep, set_of({1, 2})) == 45);
  CHECK_THROWS_AS(coalition_payoff(rep, set_of({7})), std::out_of_range);
}

TEST_CASE("the Shapley allocation is stable") {
  std::mt19937_64 rng(53);
  for (int round = 0; round < 100; ++round) {
    int n = testutil::pick(rng, 1, 8);
    combination_function f = testutil::random_combination_function(rng, n, 12);
    stability_report report = check_stability(f, shapley_sum_game(f));
    CHECK(report.pass);
    CHECK(report.exhaustive);
  }

  combination_function trivial(1);
  trivial.add(player_set::single(0), 3);
  CHECK(check_stability(trivial, shapley_sum_game(trivial)).pass);
}

TEST_CASE("stability flags a coalition paid below its worth") {
  combination_function f(2);
  f.add(player_set::single(1), 50);
  f.add(set_of({0, 1}), 50);
  allocation skewed(2);
  skewed[0] = 100;
  skewed[1] = 0;
  stability_report report = check_stability(f, skewed);
  CHECK(!report.pass);
  REQUIRE(report.violation.has_value());
  CHECK(*report.violation == player_set::single(1));
  CHECK(report.violation_worth == 50);
  CHECK(report.violation_payoff == 0);
}

TEST_CASE("stability beyond the exhaustive cap still covers the support family") {
  combination_function f(20);
  player_set low, high;
  for (int i = 0; i < 12; ++i) low.insert(i);
  for (int i = 8; i < 20; ++i) high.insert(i);
  f.add(low, 100);
  f.add(high, 60);
  f.add(player_set::single(3), 7);
  stability_report report = check_stability(f, shapley_sum_game(f));
  CHECK(report.pass);
  CHECK(!report.exhaustive);
  // three supports plus the two distinct pairwise unions
  CHECK(report.coalitions_checked == 5);
}

TEST_CASE("independent blocks") {
  combination_function f(3);
  f.add(player_set::single(0), 10);
  f.add(set_of({1, 2}), 50);
  auto blocks = find_independent_partition(f);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0] == player_set::single(0));
  CHECK(blocks[1] == set_of({1, 2}));

  combination_function g(3);
  g.add(set_of({0, 1, 2}), 5);
  CHECK(find_independent_partition(g).size() == 1);
}

TEST_CASE("independence matches the definition checked exhaustively") {
  std::mt19937_64 rng(59);
  for (int round = 0; round < 60; ++round) {
    int n = testutil::pick(rng, 1, 5);
    combination_function f = testutil::random_combination_function(rng, n, 6);
    auto blocks = find_independent_partition(f);

    for (std::uint64_t star = 1; star < (std::uint64_t{1} << n); ++star) {
      player_set candidate;
      for (int i = 0; i < n; ++i) {
        if (star >> i & 1) candidate.insert(i);
      }
      player_set rest = player_set::full(n).without(candidate);

      // definition: no nonempty inside-part plus nonempty outside-part has value
      bool independent = true;
      for (const auto& [support, value] : f.support()) {
        if (support.intersects(candidate) && support.intersects(rest)) independent = false;
      }

      bool union_of_blocks = true;
      for (const auto& block : blocks) {
        if (block.intersects(candidate) && !block.subset_of(candidate)) union_of_blocks = false;
      }
      CHECK(independent == union_of_blocks);
    }
  }
}

TEST_CASE("axioms pass for the Shapley allocation") {
  std::mt19937_64 rng(61);
  for (int round = 0; round < 60; ++round) {
    int n = testutil::pick(rng, 1, 7);
    combination_function f = testutil::random_combination_function(rng, n, 10);
    check_report report = check_axioms(f, shapley_sum_game(f));
    CHECK(report.all_passed());
  }

  combination_function single(1);
  single.add(player_set::single(0), 4);
  CHECK(check_axioms(single, shapley_sum_game(single)).all_passed());
}

TEST_CASE("axioms pass with a declared null channel") {
  combination_function f(3);
  f.add(player_set::single(0), 10);
  f.add(set_of({0, 2}), 6);
  check_report report = check_axioms(f, shapley_sum_game(f));
  CHECK(report.all_passed());
}

TEST_CASE("last-touch style allocation breaks fair ranking") {
  combination_function f(2);
  f.add(player_set::single(0), 20);
  f.add(set_of({0, 1}), 80);
  allocation last_touch(2);
  last_touch[0] = 20;
  last_touch[1] = 80;
  check_report report = check_axioms(f, last_touch);
  REQUIRE(report.find("fair-ranking") != nullptr);
  CHECK(report.find("fair-ranking")->status == check_status::fail);
  CHECK(report.find("efficiency")->status == check_status::pass);
}

TEST_CASE("violations are caught per axiom") {
  combination_function f(2);
  f.add(player_set::single(0), 10);
  f.add(player_set::single(1), 10);
  allocation skewed(2);
  skewed[0] = 3;
  skewed[1] = 17;
  check_report report = check_axioms(f, skewed);
  CHECK(report.find("symmetry")->status == check_status::fail);
  CHECK(report.find("stand-alone")->status == check_status::fail);
  CHECK(report.find("no-subsidizing")->status == check_status::fail);

  combination_function g(2);
  g.add(player_set::single(0), 10);
  allocation pays_null(2);
  pays_null[0] = 9;
  pays_null[1] = 1;
  CHECK(check_axioms(g, pays_null).find("null-player")->status == check_status::fail);
}
