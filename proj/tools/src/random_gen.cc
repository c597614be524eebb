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

#include "random_gen.h"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace bafo::cli {

Instance GenerateRandomInstance(const RandomInstanceSpec& spec) {
  if (spec.num_sellers < 1) {
    throw std::invalid_argument("random instance needs at least one seller");
  }
  if (spec.num_sellers > kMaxSellers) {
    throw std::invalid_argument("random instance n exceeds the cap " +
                                std::to_string(kMaxSellers));
  }
  if (spec.max_value < 0 || spec.max_cost < 0) {
    throw std::invalid_argument("value and cost bounds must be non-negative");
  }
  SplitMix64 rng(spec.seed);
  const int n = spec.num_sellers;

  std::vector<Money> costs(n);
  for (Money& c : costs) c = rng.NextInt(spec.max_cost);

  if (spec.kind == "explicit") {
    std::vector<std::int64_t> values(std::size_t{1} << n, 0);
    for (std::size_t mask = 1; mask < values.size(); ++mask) {
      values[mask] = rng.NextInt(spec.max_value);
    }
    if (spec.monotone) {
      for (std::size_t mask = 1; mask < values.size(); ++mask) {
        for (int i = 0; i < n; ++i) {
          if (mask & (std::size_t{1} << i)) {
            values[mask] =
                std::max(values[mask], values[mask & ~(std::size_t{1} << i)]);
          }
        }
      }
    }
    return Instance(std::move(costs), Valuation::Explicit(n, std::move(values)));
  }
  if (spec.kind == "anonymous") {
    std::vector<std::int64_t> values(n + 1, 0);
    for (int k = 1; k <= n; ++k) values[k] = rng.NextInt(spec.max_value);
    return Instance(std::move(costs),
                    Valuation::Anonymous(n, std::move(values)));
  }
  if (spec.kind == "additive") {
    std::vector<std::int64_t> weights(n);
    for (std::int64_t& w : weights) w = rng.NextInt(spec.max_value);
    return Instance(std::move(costs), Valuation::Additive(std::move(weights)));
  }
  throw std::invalid_argument("unknown valuation kind: " + spec.kind);
}

}  // namespace bafo::cli
