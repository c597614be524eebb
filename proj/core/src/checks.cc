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

#include "bafo/checks.h"

#include <bit>
#include <stdexcept>
#include <string>

#include "bafo/market.h"

namespace bafo {
namespace {

// Grid size in (p, p') pairs: ((cap+1)(cap+2)/2)^n, saturating at max.
std::uint64_t GridPairCount(int n, Money cap) {
  const unsigned __int128 per_coord =
      (static_cast<unsigned __int128>(cap) + 1) *
      (static_cast<unsigned __int128>(cap) + 2) / 2;
  unsigned __int128 total = 1;
  for (int i = 0; i < n; ++i) {
    total *= per_coord;
    if (total > ~std::uint64_t{0}) return ~std::uint64_t{0};
  }
  return static_cast<std::uint64_t>(total);
}

}  // namespace

std::optional<SubmodularityViolation> CheckSubmodular(const Valuation& v) {
  const int n = v.num_sellers();
  const std::uint32_t count = std::uint32_t{1} << n;
  // Local characterization: the marginal of j at M never grows when a single
  // extra seller i is added to M. Any local failure yields a witness of the
  // general nested-pair condition.
  for (std::uint32_t base = 0; base < count; ++base) {
    const SellerSubset m(base);
    for (SellerId i = 0; i < n; ++i) {
      if (m.Contains(i)) continue;
      const SellerSubset mi = m.With(i);
      for (SellerId j = 0; j < n; ++j) {
        if (mi.Contains(j)) continue;
        const std::int64_t marginal_at_m = v.Value(m.With(j)) - v.Value(m);
        const std::int64_t marginal_at_mi = v.Value(mi.With(j)) - v.Value(mi);
        if (marginal_at_mi > marginal_at_m) {
          return SubmodularityViolation{m, mi, j};
        }
      }
    }
  }
  return std::nullopt;
}

AnonymityResult CheckAnonymous(const Valuation& v) {
  const int n = v.num_sellers();
  const std::uint32_t count = std::uint32_t{1} << n;
  AnonymityResult result;
  result.value_by_size.assign(n + 1, 0);
  std::vector<SellerSubset> first_of_size(n + 1);
  std::vector<bool> seen(n + 1, false);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    const SellerSubset q(mask);
    const int size = q.Cardinality();
    const std::int64_t value = v.Value(q);
    if (!seen[size]) {
      seen[size] = true;
      first_of_size[size] = q;
      result.value_by_size[size] = value;
    } else if (value != result.value_by_size[size]) {
      result.anonymous = false;
      result.witness = {first_of_size[size], q};
      result.value_by_size.clear();
      return result;
    }
  }
  result.anonymous = true;
  return result;
}

ConcavityResult CheckConcaveAnonymous(const Valuation& v) {
  AnonymityResult anon = CheckAnonymous(v);
  if (!anon.anonymous) {
    throw std::invalid_argument(
        "concavity is only defined for anonymous valuations");
  }
  ConcavityResult result;
  const int n = v.num_sellers();
  result.marginal_by_size.reserve(n);
  for (int k = 1; k <= n; ++k) {
    result.marginal_by_size.push_back(anon.value_by_size[k] -
                                      anon.value_by_size[k - 1]);
  }
  result.concave = true;
  for (int k = 2; k <= n; ++k) {
    if (result.marginal_by_size[k - 1] > result.marginal_by_size[k - 2]) {
      result.concave = false;
      result.first_increasing_size = k;
      break;
    }
  }
  return result;
}

std::optional<Money> LargestFeasibleGsCap(int num_sellers, Money price_cap,
                                          std::uint64_t grid_budget) {
  if (price_cap < 0) return std::nullopt;
  Money lo = 0, hi = price_cap;
  if (GridPairCount(num_sellers, 0) > grid_budget) return std::nullopt;
  while (lo < hi) {
    const Money mid = lo + (hi - lo + 1) / 2;
    if (GridPairCount(num_sellers, mid) <= grid_budget) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

std::optional<GrossSubstitutesViolation> CheckGrossSubstitutes(
    const Valuation& v, Money price_cap, std::uint64_t grid_budget) {
  if (price_cap < 0) {
    throw std::invalid_argument("price cap must be non-negative");
  }
  const int n = v.num_sellers();
  const std::uint64_t pairs = GridPairCount(n, price_cap);
  if (pairs > grid_budget) {
    throw TooLargeError("grid too large: " + std::to_string(pairs) +
                        " price pairs exceed the grid budget " +
                        std::to_string(grid_budget));
  }

  // Demand sets for every grid point, indexed by mixed-radix rank.
  std::uint64_t num_points = 1;
  for (int i = 0; i < n; ++i) num_points *= price_cap + 1;
  std::vector<std::vector<std::uint32_t>> demand(num_points);
  {
    PriceVector p(n, 0);
    for (std::uint64_t rank = 0; rank < num_points; ++rank) {
      std::uint64_t r = rank;
      for (int i = 0; i < n; ++i) {
        p[i] = static_cast<Money>(r % (price_cap + 1));
        r /= price_cap + 1;
      }
      for (SellerSubset q : DemandSet(v, p)) {
        demand[rank].push_back(q.mask());
      }
    }
  }

  const auto rank_of = [&](const PriceVector& p) {
    std::uint64_t rank = 0;
    for (int i = n - 1; i >= 0; --i) rank = rank * (price_cap + 1) + p[i];
    return rank;
  };

  // Enumerate p lexicographically and every p' >= p above it.
  PriceVector low(n, 0);
  while (true) {
    const auto& demand_low = demand[rank_of(low)];
    PriceVector high = low;
    while (true) {
      // Advance the odometer over p' >= p, skipping p' == p.
      int pos = 0;
      while (pos < n && high[pos] == price_cap) {
        high[pos] = low[pos];
        ++pos;
      }
      if (pos == n) break;
      ++high[pos];

      std::uint32_t unchanged = 0;
      for (int i = 0; i < n; ++i) {
        if (low[i] == high[i]) unchanged |= 1u << i;
      }
      const auto& demand_high = demand[rank_of(high)];
      for (std::uint32_t q : demand_low) {
        const std::uint32_t kept = q & unchanged;
        bool covered = false;
        for (std::uint32_t r : demand_high) {
          if ((kept & r) == kept) {
            covered = true;
            break;
          }
        }
        if (!covered) {
          return GrossSubstitutesViolation{low, high, SellerSubset(q)};
        }
      }
    }
    int pos = 0;
    while (pos < n && low[pos] == price_cap) {
      low[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
    ++low[pos];
  }
  return std::nullopt;
}

}  // namespace bafo
