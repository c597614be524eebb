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

#include "bafo/instance.h"

#include <algorithm>
#include <stdexcept>

namespace bafo {

Instance::Instance(std::vector<Money> costs, Valuation valuation,
                   std::string denomination)
    : costs_(std::move(costs)),
      valuation_(std::move(valuation)),
      denomination_(std::move(denomination)) {
  if (costs_.size() != static_cast<std::size_t>(valuation_.num_sellers())) {
    throw std::invalid_argument(
        "instance needs one cost per seller: got " +
        std::to_string(costs_.size()) + " costs for n=" +
        std::to_string(valuation_.num_sellers()));
  }
  for (Money c : costs_) {
    if (c < 0) throw std::invalid_argument("costs must be non-negative");
  }
}

Money Instance::MaxCost() const {
  return *std::max_element(costs_.begin(), costs_.end());
}

std::int64_t AuctionOutcome::TotalPayments() const {
  std::int64_t total = 0;
  for (Money p : payments) total += p;
  return total;
}

AuctionOutcome MakeOutcome(const Instance& instance, SellerSubset winners,
                           const PriceVector& final_prices) {
  const int n = instance.num_sellers();
  if (final_prices.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("price vector length must equal n");
  }
  AuctionOutcome out;
  out.winners = winners;
  out.final_prices = final_prices;
  out.payments.assign(n, 0);
  out.seller_utilities.assign(n, 0);
  std::int64_t total_paid = 0;
  std::int64_t total_cost = 0;
  for (SellerId i = 0; i < n; ++i) {
    if (!winners.Contains(i)) continue;
    out.payments[i] = final_prices[i];
    out.seller_utilities[i] = final_prices[i] - instance.cost(i);
    total_paid += final_prices[i];
    total_cost += instance.cost(i);
  }
  const std::int64_t value = instance.valuation().Value(winners);
  out.buyer_utility = value - total_paid;
  out.welfare = value - total_cost;
  return out;
}

}  // namespace bafo
