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

#ifndef BAFO_INSTANCE_H_
#define BAFO_INSTANCE_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bafo/types.h"
#include "bafo/valuation.h"

namespace bafo {

// A procurement problem: n sellers with costs, and a buyer valuation.
class Instance {
 public:
  Instance(std::vector<Money> costs, Valuation valuation,
           std::string denomination = "units");

  int num_sellers() const { return valuation_.num_sellers(); }
  const std::vector<Money>& costs() const { return costs_; }
  Money cost(SellerId i) const { return costs_[i]; }
  const Valuation& valuation() const { return valuation_; }
  const std::string& denomination() const { return denomination_; }

  Money MaxCost() const;

 private:
  std::vector<Money> costs_;
  Valuation valuation_;
  std::string denomination_;
};

// Final result of either auction format.
struct AuctionOutcome {
  SellerSubset winners;
  PriceVector final_prices;
  // final_prices on winners, 0 otherwise.
  PriceVector payments;
  // v(winners) - total payments; never negative when winners come from
  // winner selection (the empty set is always available).
  std::int64_t buyer_utility = 0;
  // (payment - cost) for winners, 0 for losers.
  std::vector<std::int64_t> seller_utilities;
  // v(winners) - total winner cost.
  std::int64_t welfare = 0;

  std::int64_t TotalPayments() const;
};

// Derives payments, utilities and welfare from winners and final prices.
AuctionOutcome MakeOutcome(const Instance& instance, SellerSubset winners,
                           const PriceVector& final_prices);

}  // namespace bafo

#endif  // BAFO_INSTANCE_H_
