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

#ifndef BAFO_CHECKS_H_
#define BAFO_CHECKS_H_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bafo/types.h"
#include "bafo/valuation.h"

namespace bafo {

// Work cap for the gross-substitutes grid scan, counted in price pairs.
inline constexpr std::uint64_t kDefaultGsGridBudget = 20'000'000;

// Witness that v is not submodular: the marginal value of `added` grows when
// `subset` is extended to `superset` (subset ⊂ superset, added ∉ superset).
struct SubmodularityViolation {
  SellerSubset subset;
  SellerSubset superset;
  SellerId added;
};

// Exhaustive submodularity check; nullopt means the valuation passed.
std::optional<SubmodularityViolation> CheckSubmodular(const Valuation& v);

struct AnonymityResult {
  bool anonymous = false;
  // Filled when anonymous: value for each subset size 0..n.
  std::vector<std::int64_t> value_by_size;
  // Filled otherwise: two equal-size subsets with different values.
  std::optional<std::pair<SellerSubset, SellerSubset>> witness;
};

AnonymityResult CheckAnonymous(const Valuation& v);

struct ConcavityResult {
  bool concave = false;
  // Size-marginals v(k) - v(k-1) for k = 1..n.
  std::vector<std::int64_t> marginal_by_size;
  // Smallest k whose marginal exceeds the previous one.
  std::optional<int> first_increasing_size;
};

// Requires an anonymous valuation (any kind whose values depend only on
// subset size); throws std::invalid_argument otherwise.
ConcavityResult CheckConcaveAnonymous(const Valuation& v);

// Witness that v fails gross substitutes on the integer grid: some subset
// demanded at `low` has no superset of its unchanged-price members demanded
// at `high` (low <= high coordinate-wise).
struct GrossSubstitutesViolation {
  PriceVector low;
  PriceVector high;
  SellerSubset demanded_at_low;
};

// Checks the gross-substitutes condition over every integer price pair
// p <= p' with entries in [0, price_cap]. This is a bounded grid check, not
// a complete decision procedure: a violation is definitive, a pass only
// covers the tested grid. Throws TooLargeError when the grid exceeds
// `grid_budget` pairs.
std::optional<GrossSubstitutesViolation> CheckGrossSubstitutes(
    const Valuation& v, Money price_cap,
    std::uint64_t grid_budget = kDefaultGsGridBudget);

// Largest cap c <= price_cap whose full grid fits in `grid_budget`, or
// nullopt when even cap 0 does not fit.
std::optional<Money> LargestFeasibleGsCap(
    int num_sellers, Money price_cap,
    std::uint64_t grid_budget = kDefaultGsGridBudget);

}  // namespace bafo

#endif  // BAFO_CHECKS_H_
