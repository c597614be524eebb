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
// Shared fixtures and independent brute-force oracles for the tests. The
// oracles re-enumerate from first principles so they cannot share a bug
// with the library paths they certify.

#ifndef BAFO_TESTS_TEST_UTIL_H_
#define BAFO_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <vector>

#include "bafo/instance.h"
#include "bafo/market.h"
#include "bafo/tiebreak.h"
#include "bafo/types.h"
#include "random_gen.h"

namespace bafo::test {

// Fork (seller 0, cost 50) vs two chopsticks (sellers 1 and 2, cost 10
// each); a fork or both chopsticks are worth 100 cents.
inline Instance Chop() {
  return Instance({50, 10, 10},
                  Valuation::Explicit(3, {0, 100, 0, 100, 0, 100, 100, 100}),
                  "cents");
}

// The same market at one tenth the scale.
inline Instance DimeChop() {
  return Instance({5, 1, 1},
                  Valuation::Explicit(3, {0, 10, 0, 10, 0, 10, 10, 10}),
                  "dimes");
}

// Anonymous near-linear valuation with a flat spot: sizes (0,2,4,4,6),
// all costs zero. Money is scaled by two to keep half-units integral.
inline Instance Gap4() {
  return Instance({0, 0, 0, 0}, Valuation::Anonymous(4, {0, 2, 4, 4, 6}),
                  "half-units (scaled x2)");
}

// Three-seller member of the same family: sizes (0,2,2,4).
inline Instance Gap3() {
  return Instance({0, 0, 0}, Valuation::Anonymous(3, {0, 2, 2, 4}),
                  "half-units (scaled x2)");
}

// Weakly concave anonymous valuation with two profitable sellers.
inline Instance ConcaveDemo() {
  return Instance({3, 5, 7, 9}, Valuation::Anonymous(4, {0, 10, 18, 24, 28}));
}

// Independent demand oracle: enumerate every subset, track the maximum.
inline std::vector<SellerSubset> OracleDemand(const Valuation& v,
                                              const PriceVector& prices) {
  const std::uint32_t count = std::uint32_t{1} << v.num_sellers();
  std::int64_t best = 0;
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    std::int64_t u = v.Value(SellerSubset(mask));
    for (int i = 0; i < v.num_sellers(); ++i) {
      if (mask & (1u << i)) u -= prices[i];
    }
    if (u > best) best = u;
  }
  std::vector<SellerSubset> out;
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    std::int64_t u = v.Value(SellerSubset(mask));
    for (int i = 0; i < v.num_sellers(); ++i) {
      if (mask & (1u << i)) u -= prices[i];
    }
    if (u == best) out.push_back(SellerSubset(mask));
  }
  return out;
}

// Independent welfare-argmax oracle, tie-broken pairwise.
inline SellerSubset OracleEfficient(const Instance& instance,
                                    const TieBreakRule& tie_break) {
  const std::uint32_t count = std::uint32_t{1} << instance.num_sellers();
  SellerSubset best;
  std::int64_t best_welfare = 0;
  for (std::uint32_t mask = 1; mask < count; ++mask) {
    const SellerSubset q(mask);
    std::int64_t welfare = instance.valuation().Value(q);
    for (SellerId i : q.Members()) welfare -= instance.cost(i);
    if (welfare > best_welfare ||
        (welfare == best_welfare && tie_break.Precedes(q, best))) {
      best_welfare = welfare;
      best = q;
    }
  }
  return best;
}

// Small seeded instance for property tests, mixing the valuation kinds.
inline Instance RandomTinyInstance(std::uint64_t seed, int max_sellers = 3,
                                   Money max_value = 8, Money max_cost = 6) {
  cli::SplitMix64 mix(seed * 0x9e37ull + 0xc2b2ull);
  const int n = 1 + static_cast<int>(mix.NextInt(max_sellers - 1));
  const char* kinds[3] = {"explicit", "anonymous", "additive"};
  return cli::GenerateRandomInstance({seed, n, max_value, max_cost,
                                      kinds[mix.NextInt(2)], false});
}

}  // namespace bafo::test

#endif  // BAFO_TESTS_TEST_UTIL_H_
