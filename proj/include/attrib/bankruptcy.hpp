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

#ifndef ATTRIB_BANKRUPTCY_HPP
#define ATTRIB_BANKRUPTCY_HPP

#include <optional>
#include <string>
#include <vector>

#include "attrib/extensions.hpp"
#include "attrib/problem.hpp"
#include "attrib/report.hpp"
#include "attrib/sum_game.hpp"

namespace attrib {

/// An estate to divide among claimants whose claims exceed it. Claims are
/// nonnegative and the estate never exceeds their sum; an estate of zero is
/// tolerated as a degenerate case (a valueless campaign).
class bankruptcy_problem {
 public:
  bankruptcy_problem(rational estate, std::vector<rational> claims,
                     std::vector<std::string> labels = {});

  const rational& estate() const { return estate_; }
  const std::vector<rational>& claims() const { return claims_; }
  const rational& claim(int i) const { return claims_.at(static_cast<size_t>(i)); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_.at(static_cast<size_t>(i)); }
  int claimant_count() const { return static_cast<int>(claims_.size()); }

  rational total_claims() const;
  rational deficit() const { return total_claims() - estate_; }
  rational max_claim() const;

 private:
  rational estate_;
  std::vector<rational> claims_;
  std::vector<std::string> labels_;
};

enum class claim_rule { prop, cel };

/// Every channel claims the full benefit of every combination it belongs
/// to; the estate is the whole campaign benefit. The deficit then equals
/// the benefit-weighted oversubscription sum((|S|-1) f(S)).
bankruptcy_problem to_bankruptcy(const combination_function& kpi,
                                 std::vector<std::string> labels = {});

/// Shares proportional to claims. A zero-claims problem (estate forcibly
/// zero) yields the all-zero allocation.
allocation prop_rule(const bankruptcy_problem& problem);

struct cel_result {
  allocation shares;
  rational loss;        // the common loss lambda: share_i = max(0, c_i - loss)
  bool degenerate = false;  // estate was zero
};

/// Constrained equal losses: everyone absorbs the same loss, floored at
/// zero, calibrated so shares exhaust the estate. Solved exactly by walking
/// the claim breakpoints in descending order; no numeric root-finding.
cel_result cel_rule(const bankruptcy_problem& problem);

/// The pessimistic coalitional game: a coalition is worth whatever the
/// estate leaves after conceding every outside claim in full.
characteristic_function pessimistic_game(const bankruptcy_problem& problem);

/// Whether (estate, claims) can arise from some nonnegative combination
/// benefit function: claims must cover the estate and the estate must cover
/// the largest single claim. Negative values disqualify outright.
bool attribution_compatible(const rational& estate, const std::vector<rational>& claims);

struct attribution_compatibility {
  bool compatible = false;
  std::optional<combination_function> witness;
};

/// Decides compatibility and, when it holds, produces a witness benefit
/// function whose induced bankruptcy problem is exactly this one.
attribution_compatibility check_attribution_compatible(const bankruptcy_problem& problem);

/// Constructive witness: claims are processed in ascending order, peeling
/// off the largest claimant per step. Throws std::invalid_argument on
/// incompatible problems.
combination_function construct_kpi_witness(const bankruptcy_problem& problem);

/// What each claimant keeps if everyone else is paid in full first.
std::vector<rational> minimal_rights(const bankruptcy_problem& problem);

/// Property audit for a rule on one problem: individual rationality,
/// efficiency, equal treatment of equals, exclusion of weak claims,
/// composition from minimal rights, and (when the problem is attribution
/// compatible) closure of the minimal-rights reduction within that class.
check_report check_rule_properties(const bankruptcy_problem& problem, claim_rule rule);

struct irrelevance_reduction {
  bankruptcy_problem reduced;
  std::vector<int> removed;          // original indices with zero share
  std::vector<int> kept;             // original indices of surviving claimants
  allocation reduced_shares;
  bool shares_preserved = false;     // survivors keep their exact share
};

/// Drops every zero-share claimant and re-solves. PROP and CEL leave the
/// survivors unchanged.
irrelevance_reduction reduce_irrelevant(const bankruptcy_problem& problem, claim_rule rule);

/// Bankruptcy problem over order players: claims split by position while
/// the estate and deficit stay put. Requires repetition-free paths; a
/// channel claiming through two positions of one path would double-count.
struct order_split {
  bankruptcy_problem problem;              // claimants are the order players
  std::vector<extended_player> players;    // parallel to claims
  std::vector<std::vector<int>> claimants_of_channel;  // base channel -> claimant ids
};

order_split bankruptcy_order_extend(const attribution_problem& problem);

struct order_split_entry {
  int channel;
  rational merged_share;       // rule on the unsplit problem
  rational split_share_total;  // same rule, order-player shares summed
  int relation;                // sign of merged - split: -1, 0, +1
  int order_player_count;      // positions this channel claims through
};

/// Compares a rule's shares before and after the order split. PROP always
/// decomposes exactly. CEL does so only under the all-relevant hypothesis
/// and the balanced-position condition; outside it the comparison is
/// reported, not asserted.
struct bankruptcy_order_report {
  claim_rule rule = claim_rule::prop;
  bool applicable = false;             // repetition-free
  std::vector<int> repeating_paths;
  std::vector<order_split_entry> channels;
  bool exact_decomposition = false;
  // CEL only:
  bool relevance_hypothesis = false;   // every claimant relevant at both levels
  std::vector<std::string> irrelevant_claimants;
  bool condition_matches = false;      // share drops iff position share above mean
};

bankruptcy_order_report check_order_decomposition_bankruptcy(const attribution_problem& problem,
                                                             claim_rule rule);

/// Repeating a channel once inside a path splits it into a claimant keeping
/// the old claim plus one claiming that path's benefit; the rule's total for
/// the pair never falls below the unsplit share.
struct bankruptcy_monotonicity_report {
  claim_rule rule = claim_rule::prop;
  rational merged_share;
  rational kept_share;
  rational repeat_share;
  bool holds = false;  // merged <= kept + repeat
};

bankruptcy_monotonicity_report check_repetition_monotonicity_bankruptcy(
    const attribution_problem& problem, int path_index, int channel, claim_rule rule);

}  // namespace attrib

#endif  // ATTRIB_BANKRUPTCY_HPP
