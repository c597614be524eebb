// Copyright 2026 The BAFO Auctions Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "experiments.h"

#include <algorithm>
#include <sstream>
#include <vector>

#include "bafo/descending.h"
#include "bafo/market.h"
#include "bafo/nyb.h"

#include "instance_io.h"

namespace bafo::cli {
namespace {

using nlohmann::json;

json SubsetToJson(SellerSubset subset) {
  json arr = json::array();
  for (SellerId i : subset.Members()) arr.push_back(i);
  return arr;
}

}  // namespace

Instance MakeChopsticksInstance() {
  // Sellers: fork = 0, chopstick A = 1, chopstick B = 2. A fork or both
  // chopsticks are worth 100 cents; anything else is worthless.
  std::vector<std::int64_t> values = {0, 100, 0, 100, 0, 100, 100, 100};
  return Instance({50, 10, 10}, Valuation::Explicit(3, std::move(values)),
                  "cents");
}

ExperimentReport RunChopsticksExperiment() {
  const Instance instance = MakeChopsticksInstance();
  const TieBreakRule tie_break = TieBreakRule::MaxCardThenLexMask();
  const Money cap = DefaultBidCap(instance);
  const SellerSubset chopsticks = SellerSubset::FromIds({1, 2});

  ExperimentReport report;
  report.name = "chopsticks";
  report.all_passed = true;

  json runs = json::array();
  std::ostringstream summary;
  summary << "chopsticks: fork costs 50, chopsticks cost 10 each, value 100 "
             "cents\n";

  std::vector<SellerId> order = {0, 1, 2};
  std::sort(order.begin(), order.end());
  do {
    const NybRunResult run =
        RunCanonical(instance, tie_break, NybOrder::Fixed(order), cap);
    json entry;
    entry["order"] = order;
    json bids = json::array();
    for (const NybEvent& e : run.events) bids.push_back(e.bid);
    entry["bids"] = bids;
    entry["winners"] = SubsetToJson(run.outcome.winners);
    entry["buyer_cost"] = run.outcome.TotalPayments();
    const bool chopsticks_win = run.outcome.winners == chopsticks;
    entry["chopsticks_win"] = chopsticks_win;
    report.all_passed = report.all_passed && chopsticks_win;
    runs.push_back(entry);

    summary << "  order";
    for (SellerId i : order) summary << " " << i;
    summary << ": bids";
    for (const NybEvent& e : run.events) summary << " " << e.bid;
    summary << ", winners " << run.outcome.winners.ToString() << ", cost "
            << run.outcome.TotalPayments() << "\n";
  } while (std::next_permutation(order.begin(), order.end()));

  // The benchmark order: chopstick A, then chopstick B, then the fork.
  const NybRunResult key_run = RunCanonical(
      instance, tie_break, NybOrder::Fixed({1, 2, 0}), cap);
  const std::vector<Money> expected_bids = {40, 10, 50};
  std::vector<Money> actual_bids;
  for (const NybEvent& e : key_run.events) actual_bids.push_back(e.bid);
  const bool key_bids_ok = actual_bids == expected_bids;
  const bool key_cost_ok = key_run.outcome.TotalPayments() == 50;
  report.all_passed = report.all_passed && key_bids_ok && key_cost_ok;

  report.data["experiment"] = "chopsticks";
  report.data["version"] = kFileFormatVersion;
  report.data["instance_hash"] = InstanceHashHex(instance, tie_break.name());
  report.data["tiebreak"] = tie_break.name();
  report.data["ordering"] = nullptr;
  report.data["seed"] = nullptr;
  report.data["bid_cap"] = cap;
  report.data["runs"] = runs;
  report.data["expected"] = {{"order", {1, 2, 0}},
                             {"bids", expected_bids},
                             {"winners", {1, 2}},
                             {"buyer_cost", 50}};
  report.data["checks"] = {{"chopsticks_win_all_orders", report.all_passed},
                           {"key_order_bids", key_bids_ok},
                           {"key_order_cost", key_cost_ok}};
  report.data["passed"] = report.all_passed;

  summary << (report.all_passed ? "all checks passed" : "CHECKS FAILED")
          << "\n";
  report.summary = summary.str();
  return report;
}

Instance MakeCostGapInstance(int num_sellers) {
  if (num_sellers < 2) {
    throw std::invalid_argument("cost-gap needs at least two sellers");
  }
  // All money scaled by 2 so the half-unit starting price is integral.
  std::vector<std::int64_t> by_size(num_sellers + 1, 0);
  for (int k = 1; k <= num_sellers; ++k) {
    if (k <= num_sellers - 2) {
      by_size[k] = 2 * k;
    } else if (k == num_sellers - 1) {
      by_size[k] = 2 * (num_sellers - 2);
    } else {
      by_size[k] = 2 * (num_sellers - 1);
    }
  }
  return Instance(PriceVector(num_sellers, 0),
                  Valuation::Anonymous(num_sellers, std::move(by_size)),
                  "half-units (scaled x2)");
}

ExperimentReport RunCostGapExperiment(int num_sellers, std::uint64_t budget) {
  const Instance instance = MakeCostGapInstance(num_sellers);
  const TieBreakRule tie_break = TieBreakRule::MaxCardThenLexMask();
  const DescOrdering ordering = DescOrdering::LowestEligibleIndex();
  const DescProfile canonical = CanonicalDescProfile();

  const DescRunResult high_run =
      RunDescending(instance, tie_break, ordering, canonical, 2);
  const DescRunResult low_run =
      RunDescending(instance, tie_break, ordering, canonical, 1);
  const std::int64_t high_cost = high_run.outcome.TotalPayments();
  const std::int64_t low_cost = low_run.outcome.TotalPayments();

  // Exact-ratio check without division: low/high == n/2.
  const bool ratio_ok = 2 * low_cost == num_sellers * high_cost;
  const bool high_ok = high_cost == 2;
  const bool low_ok = low_cost == num_sellers;

  // Cross-check against the exact equilibrium at both starting prices.
  const DescEquilibrium exact_high =
      SolveDescendingExact(instance, tie_break, ordering, 2, budget);
  const DescEquilibrium exact_low =
      SolveDescendingExact(instance, tie_break, ordering, 1, budget);
  const bool exact_matches =
      exact_high.outcome().winners == high_run.outcome.winners &&
      exact_low.outcome().winners == low_run.outcome.winners &&
      exact_high.outcome().TotalPayments() == high_cost &&
      exact_low.outcome().TotalPayments() == low_cost;

  ExperimentReport report;
  report.name = "cost-gap";
  report.all_passed = ratio_ok && high_ok && low_ok && exact_matches;

  report.data["experiment"] = "cost-gap";
  report.data["version"] = kFileFormatVersion;
  report.data["instance_hash"] = InstanceHashHex(instance, tie_break.name());
  report.data["tiebreak"] = tie_break.name();
  report.data["ordering"] = ordering.name();
  report.data["seed"] = nullptr;
  report.data["n"] = num_sellers;
  report.data["money_scale"] = 2;
  report.data["runs"] = {
      {{"h", 2},
       {"buyer_cost", high_cost},
       {"winners", SubsetToJson(high_run.outcome.winners)},
       {"exact_buyer_cost", exact_high.outcome().TotalPayments()}},
      {{"h", 1},
       {"buyer_cost", low_cost},
       {"winners", SubsetToJson(low_run.outcome.winners)},
       {"exact_buyer_cost", exact_low.outcome().TotalPayments()}}};
  report.data["cost_ratio"] = {{"numerator", low_cost},
                               {"denominator", high_cost}};
  report.data["expected_ratio"] = {{"numerator", num_sellers},
                                   {"denominator", 2}};
  report.data["checks"] = {{"high_start_cost_is_2", high_ok},
                           {"low_start_cost_is_n", low_ok},
                           {"ratio_is_n_over_2", ratio_ok},
                           {"exact_solver_agrees", exact_matches}};
  report.data["passed"] = report.all_passed;

  std::ostringstream summary;
  summary << "cost-gap (n=" << num_sellers << ", money scaled x2):\n"
          << "  start h=2: buyer cost " << high_cost << "\n"
          << "  start h=1: buyer cost " << low_cost << "\n"
          << "  cost ratio " << low_cost << "/" << high_cost << " (expected "
          << num_sellers << "/2)\n"
          << (report.all_passed ? "all checks passed" : "CHECKS FAILED")
          << "\n";
  report.summary = summary.str();
  return report;
}

Instance MakeConcaveThresholdInstance() {
  return Instance({3, 5, 7, 9}, Valuation::Anonymous(4, {0, 10, 18, 24, 28}),
                  "units");
}

ExperimentReport RunConcaveThresholdExperiment(std::uint64_t budget) {
  const Instance instance = MakeConcaveThresholdInstance();
  const TieBreakRule tie_break = TieBreakRule::MaxCardThenLexMask();
  const DescOrdering ordering = DescOrdering::LowestEligibleIndex();
  const Money h = DefaultInitialPrice(instance);

  const AuctionOutcome formula = ConcaveThresholdOutcome(instance);
  const DescEquilibrium exact =
      SolveDescendingExact(instance, tie_break, ordering, h, budget);

  const bool winners_match = formula.winners == exact.outcome().winners;
  const bool payments_match = formula.payments == exact.outcome().payments;
  const bool expected_shape = formula.winners.Cardinality() == 2 &&
                              formula.TotalPayments() == 12;

  ExperimentReport report;
  report.name = "concave-threshold";
  report.all_passed = winners_match && payments_match && expected_shape;

  report.data["experiment"] = "concave-threshold";
  report.data["version"] = kFileFormatVersion;
  report.data["instance_hash"] = InstanceHashHex(instance, tie_break.name());
  report.data["tiebreak"] = tie_break.name();
  report.data["ordering"] = ordering.name();
  report.data["seed"] = nullptr;
  report.data["h"] = h;
  report.data["formula_outcome"] = OutcomeToJson(formula);
  report.data["exact_outcome"] = OutcomeToJson(exact.outcome());
  report.data["solver_nodes"] = exact.node_count();
  report.data["checks"] = {{"winners_match", winners_match},
                           {"payments_match", payments_match},
                           {"two_winners_priced_6", expected_shape}};
  report.data["passed"] = report.all_passed;

  std::ostringstream summary;
  summary << "concave-threshold: sizes (0,10,18,24,28), costs (3,5,7,9)\n"
          << "  formula: winners " << formula.winners.ToString()
          << ", buyer cost " << formula.TotalPayments() << "\n"
          << "  exact solver (h=" << h << "): winners "
          << exact.outcome().winners.ToString() << ", buyer cost "
          << exact.outcome().TotalPayments() << "\n"
          << (report.all_passed ? "all checks passed" : "CHECKS FAILED")
          << "\n";
  report.summary = summary.str();
  return report;
}

}  // namespace bafo::cli
