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

#include "attrib/sum_game.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>

#include "attrib/errors.hpp"

namespace attrib {

namespace {

player_set expand(std::uint32_t mask, const std::vector<int>& members) {
  player_set s;
  for (size_t k = 0; k < members.size(); ++k) {
    if (mask >> k & 1) s.insert(members[k]);
  }
  return s;
}

std::string set_text(const player_set& s) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (int i : s.members()) {
    if (!first) out << ",";
    out << i;
    first = false;
  }
  out << "}";
  return out.str();
}

std::vector<mpz_class> factorials(int n) {
  std::vector<mpz_class> fact(static_cast<size_t>(n) + 1);
  fact[0] = 1;
  for (int k = 1; k <= n; ++k) fact[static_cast<size_t>(k)] = fact[static_cast<size_t>(k) - 1] * k;
  return fact;
}

}  // namespace

rational allocation::sum() const {
  rational total = 0;
  for (const auto& p : payoffs) total += p;
  return total;
}

characteristic_function sum_game(const combination_function& kpi) {
  return characteristic_function{
      kpi.universe_size(), [kpi](const player_set& coalition) {
        rational worth = 0;
        for (const auto& [combination, value] : kpi.support()) {
          if (combination.subset_of(coalition)) worth += value;
        }
        return worth;
      }};
}

combination_function harsanyi_dividends(const characteristic_function& game,
                                        const player_set& players, int max_players) {
  std::vector<int> members = players.members();
  int q = static_cast<int>(members.size());
  if (q > max_players)
    throw resource_error("dividend computation over " + std::to_string(q) +
                         " players exceeds the cap of " + std::to_string(max_players));

  size_t count = size_t{1} << q;
  std::vector<rational> values(count);
  for (size_t mask = 0; mask < count; ++mask)
    values[mask] = game(expand(static_cast<std::uint32_t>(mask), members));

  // In-place subset Moebius transform; afterwards values[mask] is the
  // dividend of the coalition encoded by mask.
  for (int b = 0; b < q; ++b) {
    for (size_t mask = 0; mask < count; ++mask) {
      if (mask >> b & 1) values[mask] -= values[mask ^ (size_t{1} << b)];
    }
  }

  combination_function dividends(game.universe_size);
  for (size_t mask = 1; mask < count; ++mask) {
    if (values[mask] != 0)
      dividends.add(expand(static_cast<std::uint32_t>(mask), members), values[mask]);
  }
  return dividends;
}

allocation shapley_bruteforce(const characteristic_function& game, const player_set& players,
                              int max_players) {
  std::vector<int> members = players.members();
  int q = static_cast<int>(members.size());
  if (q > max_players)
    throw resource_error("brute-force Shapley over " + std::to_string(q) +
                         " players exceeds the cap of " + std::to_string(max_players));

  allocation result(game.universe_size);
  if (q == 0) return result;
  auto fact = factorials(q);

  for (int pos = 0; pos < q; ++pos) {
    int player = members[static_cast<size_t>(pos)];
    std::vector<int> others = members;
    others.erase(others.begin() + pos);

    rational value = 0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << (q - 1)); ++mask) {
      player_set coalition = expand(mask, others);
      int s = coalition.size();
      player_set with = coalition;
      with.insert(player);
      rational weight(fact[static_cast<size_t>(s)] * fact[static_cast<size_t>(q - s - 1)],
                      fact[static_cast<size_t>(q)]);
      weight.canonicalize();
      value += weight * (game(with) - game(coalition));
    }
    result[player] = value;
  }
  return result;
}

allocation shapley_sum_game(const combination_function& kpi) {
  allocation result(kpi.universe_size());
  for (const auto& [combination, value] : kpi.support()) {
    rational share = value / combination.size();
    for (int player : combination.members()) result[player] += share;
  }
  return result;
}

rational coalition_payoff(const allocation& alloc, const player_set& coalition) {
  rational total = 0;
  for (int player : coalition.members()) total += alloc[player];
  return total;
}

stability_report check_stability(const combination_function& kpi, const allocation& alloc,
                                 int exhaustive_max_players) {
  stability_report report;
  characteristic_function game = sum_game(kpi);
  int n = kpi.universe_size();

  auto check = [&](const player_set& coalition) {
    ++report.coalitions_checked;
    rational payoff = coalition_payoff(alloc, coalition);
    rational worth = game(coalition);
    if (payoff < worth && report.pass) {
      report.pass = false;
      report.violation = coalition;
      report.violation_payoff = payoff;
      report.violation_worth = worth;
    }
  };

  if (n <= exhaustive_max_players) {
    report.exhaustive = true;
    std::vector<int> all(static_cast<size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) check(expand(mask, all));
    return report;
  }

  std::set<player_set> family;
  for (const auto& [s, v] : kpi.support()) family.insert(s);
  std::vector<player_set> supports(family.begin(), family.end());
  for (size_t a = 0; a < supports.size(); ++a) {
    for (size_t b = a + 1; b < supports.size(); ++b) family.insert(supports[a].united(supports[b]));
  }
  for (const auto& coalition : family) check(coalition);
  return report;
}

std::vector<player_set> find_independent_partition(const combination_function& kpi) {
  int n = kpi.universe_size();
  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };

  for (const auto& [combination, value] : kpi.support()) {
    std::vector<int> members = combination.members();
    for (size_t k = 1; k < members.size(); ++k)
      parent[static_cast<size_t>(find(members[k]))] = find(members[0]);
  }

  std::vector<player_set> blocks;
  std::vector<int> block_of_root(static_cast<size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    int root = find(i);
    if (block_of_root[static_cast<size_t>(root)] < 0) {
      block_of_root[static_cast<size_t>(root)] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<size_t>(block_of_root[static_cast<size_t>(root)])].insert(i);
  }
  return blocks;
}

check_report check_axioms(const combination_function& kpi, const allocation& alloc) {
  check_report report;
  int n = kpi.universe_size();

  // Efficiency: the whole benefit is distributed.
  {
    rational paid = alloc.sum();
    rational produced = kpi.total();
    report.add("efficiency", paid == produced,
               paid == produced ? ""
                                : "paid " + to_fraction_string(paid) + ", produced " +
                                      to_fraction_string(produced));
  }

  // Base sets against which pairwise conditions are decided: every support
  // combination stripped of the pair, plus the empty set. All other subsets
  // compare 0 with 0.
  auto base_sets = [&](int i, int j) {
    std::set<player_set> bases;
    bases.insert(player_set{});
    player_set pair;
    pair.insert(i);
    pair.insert(j);
    for (const auto& [s, v] : kpi.support()) bases.insert(s.without(pair));
    return bases;
  };

  {
    bool ok = true;
    std::string witness;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = i + 1; j < n && ok; ++j) {
        bool symmetric = true;
        for (const auto& base : base_sets(i, j)) {
          player_set with_i = base, with_j = base;
          with_i.insert(i);
          with_j.insert(j);
          if (kpi.value(with_i) != kpi.value(with_j)) {
            symmetric = false;
            break;
          }
        }
        if (symmetric && alloc[i] != alloc[j]) {
          ok = false;
          witness = "symmetric players " + std::to_string(i) + "," + std::to_string(j) +
                    " paid " + to_fraction_string(alloc[i]) + " vs " +
                    to_fraction_string(alloc[j]);
        }
      }
    }
    report.add("symmetry", ok, witness);
  }

  {
    bool ok = true;
    std::string witness;
    for (int i = 0; i < n; ++i) {
      bool null_player = true;
      for (const auto& [s, v] : kpi.support()) {
        if (s.contains(i)) {
          null_player = false;
          break;
        }
      }
      if (null_player && alloc[i] != 0) {
        ok = false;
        witness = "null player " + std::to_string(i) + " paid " + to_fraction_string(alloc[i]);
        break;
      }
    }
    report.add("null-player", ok, witness);
  }

  {
    bool ok = true;
    std::string witness;
    for (int i = 0; i < n; ++i) {
      rational solo = kpi.value(player_set::single(i));
      if (alloc[i] < solo) {
        ok = false;
        witness = "player " + std::to_string(i) + " paid " + to_fraction_string(alloc[i]) +
                  " below stand-alone " + to_fraction_string(solo);
        break;
      }
    }
    report.add("stand-alone", ok, witness);
  }

  {
    bool ok = true;
    std::string witness;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = 0; j < n && ok; ++j) {
        if (i == j) continue;
        bool dominates = true;
        for (const auto& base : base_sets(i, j)) {
          player_set with_i = base, with_j = base;
          with_i.insert(i);
          with_j.insert(j);
          if (kpi.value(with_i) < kpi.value(with_j)) {
            dominates = false;
            break;
          }
        }
        if (dominates && alloc[i] < alloc[j]) {
          ok = false;
          witness = "player " + std::to_string(i) + " dominates " + std::to_string(j) +
                    " but ranks below (" + to_fraction_string(alloc[i]) + " < " +
                    to_fraction_string(alloc[j]) + ")";
        }
      }
    }
    report.add("fair-ranking", ok, witness);
  }

  {
    // Support combinations never straddle two independent blocks, so block
    // unions inherit the equality from single blocks; they are still swept
    // when few enough.
    std::vector<player_set> blocks = find_independent_partition(kpi);
    auto block_value = [&](const player_set& block_union) {
      rational paid = coalition_payoff(alloc, block_union);
      rational produced = 0;
      for (const auto& [s, v] : kpi.support()) {
        if (s.subset_of(block_union)) produced += v;
      }
      return std::make_pair(paid, produced);
    };

    bool ok = true;
    std::string witness;
    auto check_union = [&](const player_set& block_union) {
      auto [paid, produced] = block_value(block_union);
      if (paid != produced && ok) {
        ok = false;
        witness = "independent set " + set_text(block_union) + " paid " +
                  to_fraction_string(paid) + ", generated " + to_fraction_string(produced);
      }
    };

    if (blocks.size() <= 12) {
      for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << blocks.size()); ++mask) {
        player_set block_union;
        for (size_t k = 0; k < blocks.size(); ++k) {
          if (mask >> k & 1) block_union = block_union.united(blocks[k]);
        }
        check_union(block_union);
      }
    } else {
      for (const auto& block : blocks) check_union(block);
    }
    report.add("no-subsidizing", ok, witness);
  }

  return report;
}

}  // namespace attrib
