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
//
// Bundled experiments. Each returns a machine-readable report plus a short
// human-readable summary, and records an overall pass flag for its built-in
// expectation checks.

#ifndef BAFO_CLI_EXPERIMENTS_H_
#define BAFO_CLI_EXPERIMENTS_H_

#include <cstdint>
#include <string>

#include "bafo/instance.h"

#include "json.hpp"

namespace bafo::cli {

struct ExperimentReport {
  std::string name;
  nlohmann::json data;
  std::string summary;
  bool all_passed = false;
};

// The complements showcase: one fork seller (cost 50) against two chopstick
// sellers (cost 10 each), value 100 cents for a fork or for both chopsticks.
// Runs the canonical bidding strategy under all six approach orders; the
// chopsticks win every time, and the order (chopstick A, chopstick B, fork)
// produces bids of exactly 40, 10 and 50 cents.
ExperimentReport RunChopsticksExperiment();
Instance MakeChopsticksInstance();

// Anonymous-valuation family where the buyer's total cost in equilibrium
// depends on the starting price: v(k) = k for k <= n-2, v(n-1) = n-2,
// v(n) = n-1, all costs zero, scaled by 2 so that the half-unit starting
// price becomes integral. Starting at h=2 the first approached seller
// freezes high and everyone else descends to zero (total cost 2); starting
// at h=1 the auction ends immediately with every seller at 1 (total cost n).
// The cost ratio is exactly n/2.
ExperimentReport RunCostGapExperiment(int num_sellers, std::uint64_t budget);
Instance MakeCostGapInstance(int num_sellers);

// Weakly concave anonymous valuation (0,10,18,24,28) with costs (3,5,7,9):
// the closed-form threshold outcome (two winners, each priced at 6) must
// match the exact equilibrium of the descending auction on the same
// instance, winners and payments alike.
ExperimentReport RunConcaveThresholdExperiment(std::uint64_t budget);
Instance MakeConcaveThresholdInstance();

}  // namespace bafo::cli

#endif  // BAFO_CLI_EXPERIMENTS_H_
