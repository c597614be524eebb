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

#include "bafo/market.h"

#include <bit>
#include <stdexcept>
#include <string>

namespace bafo {
namespace {

void CheckInputs(const Valuation& v, const PriceVector& prices,
                 int max_exhaustive_sellers) {
  if (prices.size() != static_cast<std::size_t>(v.num_sellers())) {
    throw std::invalid_argument("price vector length must equal n");
  }
  if (v.num_sellers() > max_exhaustive_sellers) {
    throw TooLargeError(
        "instance too large: n=" + std::to_string(v.num_sellers()) +
        " exceeds the exhaustive-enumeration bound " +
        std::to_string(max_exhaustive_sellers));
  }
}

std::int64_t PriceOf(const PriceVector& prices, std::uint32_t mask) {
  std::int64_t total = 0;
  for (std::uint32_t m = mask; m != 0; m &= m - 1) {
    total += prices[std::countr_zero(m)];
  }
  return total;
}

}  // namespace

std::int64_t BuyerUtility(const Valuation& v, const PriceVector& prices,
                          SellerSubset q) {
  if (prices.size() != static_cast<std::size_t>(v.num_sellers())) {
    throw std::invalid_argument("price vector length must equal n");
  }
  return v.Value(q) - PriceOf(prices, q.mask());
}

std::vector<SellerSubset> DemandSet(const Valuation& v,
                                    const PriceVector& prices,
                                    int max_exhaustive_sellers) {
  CheckInputs(v, prices, max_exhaustive_sellers);
  const std::uint32_t count = std::uint32_t{1} << v.num_sellers();
  std::int64_t best = 0;  // the empty set yields exactly 0
  for (std::uint32_t mask = 1; mask < count; ++mask) {
    const std::int64_t u =
        v.Value(SellerSubset(mask)) - PriceOf(prices, mask);
    if (u > best) best = u;
  }
  std::vector<SellerSubset> demand;
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    const std::int64_t u =
        v.Value(SellerSubset(mask)) - PriceOf(prices, mask);
    if (u == best) demand.push_back(SellerSubset(mask));
  }
  return demand;
}

SellerSubset SelectWinner(const Valuation& v, const PriceVector& prices,
                          const TieBreakRule& tie_break,
                          int max_exhaustive_sellers) {
  CheckInputs(v, prices, max_exhaustive_sellers);
  const std::uint32_t count = std::uint32_t{1} << v.num_sellers();
  SellerSubset best_set;
  std::int64_t best_utility = 0;
  for (std::uint32_t mask = 1; mask < count; ++mask) {
    const SellerSubset q(mask);
    const std::int64_t u = v.Value(q) - PriceOf(prices, mask);
    if (u > best_utility ||
        (u == best_utility && tie_break.Precedes(q, best_set))) {
      best_utility = u;
      best_set = q;
    }
  }
  return best_set;
}

std::int64_t SocialWelfare(const Instance& instance, SellerSubset winners) {
  std::int64_t cost = 0;
  for (SellerId i : winners.Members()) cost += instance.cost(i);
  return instance.valuation().Value(winners) - cost;
}

SellerSubset EfficientAllocation(const Instance& instance,
                                 const TieBreakRule& tie_break) {
  // Welfare at W equals buyer utility at prices set to costs, so the
  // efficient allocation is winner selection against the cost vector.
  return SelectWinner(instance.valuation(), instance.costs(), tie_break);
}

}  // namespace bafo
