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

#ifndef BAFO_MARKET_H_
#define BAFO_MARKET_H_

#include <cstdint>
#include <vector>

#include "bafo/instance.h"
#include "bafo/tiebreak.h"
#include "bafo/types.h"
#include "bafo/valuation.h"

namespace bafo {

// v(q) minus the total price of q. May be negative.
std::int64_t BuyerUtility(const Valuation& v, const PriceVector& prices,
                          SellerSubset q);

// All subsets attaining the maximum buyer utility at `prices`, enumerated
// exhaustively over 2^n subsets and sorted by mask. Never empty: the empty
// set is always a candidate. Throws TooLargeError if n exceeds
// `max_exhaustive_sellers`.
std::vector<SellerSubset> DemandSet(const Valuation& v,
                                    const PriceVector& prices,
                                    int max_exhaustive_sellers = kMaxSellers);

// The tie-break-first element of the demand set.
SellerSubset SelectWinner(const Valuation& v, const PriceVector& prices,
                          const TieBreakRule& tie_break,
                          int max_exhaustive_sellers = kMaxSellers);

// v(winners) - sum of winner costs.
std::int64_t SocialWelfare(const Instance& instance, SellerSubset winners);

// The tie-break-first welfare-maximizing subset. Identical to selecting a
// winner at prices equal to costs.
SellerSubset EfficientAllocation(const Instance& instance,
                                 const TieBreakRule& tie_break);

}  // namespace bafo

#endif  // BAFO_MARKET_H_
