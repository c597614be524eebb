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

#include "bafo/valuation.h"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

namespace bafo {
namespace {

void CheckNumSellers(int n) {
  if (n < 1) {
    throw std::invalid_argument("valuation needs at least one seller");
  }
  if (n > kMaxSellers) {
    throw TooLargeError("instance too large: n=" + std::to_string(n) +
                        " exceeds the exhaustive-enumeration bound " +
                        std::to_string(kMaxSellers));
  }
}

}  // namespace

Valuation::Valuation(ValuationKind kind, int num_sellers,
                     std::vector<std::int64_t> table)
    : kind_(kind), num_sellers_(num_sellers), table_(std::move(table)) {
  switch (kind_) {
    case ValuationKind::kExplicit: {
      max_value_ = *std::max_element(table_.begin(), table_.end());
      break;
    }
    case ValuationKind::kAnonymous: {
      max_value_ = *std::max_element(table_.begin(), table_.end());
      break;
    }
    case ValuationKind::kAdditive: {
      max_value_ = 0;
      for (std::int64_t w : table_) {
        if (w > 0) max_value_ += w;
      }
      break;
    }
  }
}

Valuation Valuation::Explicit(int num_sellers,
                              std::vector<std::int64_t> value_by_mask) {
  CheckNumSellers(num_sellers);
  const std::size_t expected = std::size_t{1} << num_sellers;
  if (value_by_mask.size() != expected) {
    throw std::invalid_argument(
        "explicit valuation for n=" + std::to_string(num_sellers) +
        " needs " + std::to_string(expected) + " values, got " +
        std::to_string(value_by_mask.size()));
  }
  if (value_by_mask[0] != 0) {
    throw std::invalid_argument("value of the empty set must be 0");
  }
  return Valuation(ValuationKind::kExplicit, num_sellers,
                   std::move(value_by_mask));
}

Valuation Valuation::Anonymous(int num_sellers,
                               std::vector<std::int64_t> value_by_size) {
  CheckNumSellers(num_sellers);
  if (value_by_size.size() != static_cast<std::size_t>(num_sellers) + 1) {
    throw std::invalid_argument(
        "anonymous valuation for n=" + std::to_string(num_sellers) +
        " needs " + std::to_string(num_sellers + 1) + " values, got " +
        std::to_string(value_by_size.size()));
  }
  if (value_by_size[0] != 0) {
    throw std::invalid_argument("value of the empty set must be 0");
  }
  return Valuation(ValuationKind::kAnonymous, num_sellers,
                   std::move(value_by_size));
}

Valuation Valuation::Additive(std::vector<std::int64_t> weight_by_seller) {
  const int n = static_cast<int>(weight_by_seller.size());
  CheckNumSellers(n);
  return Valuation(ValuationKind::kAdditive, n, std::move(weight_by_seller));
}

Valuation Valuation::UnitDemand(std::vector<std::int64_t> weight_by_seller) {
  const int n = static_cast<int>(weight_by_seller.size());
  CheckNumSellers(n);
  std::vector<std::int64_t> table(std::size_t{1} << n, 0);
  for (std::uint32_t mask = 1; mask < table.size(); ++mask) {
    std::int64_t best = 0;
    for (std::uint32_t m = mask; m != 0; m &= m - 1) {
      best = std::max(best, weight_by_seller[std::countr_zero(m)]);
    }
    table[mask] = best;
  }
  return Valuation(ValuationKind::kExplicit, n, std::move(table));
}

std::int64_t Valuation::Value(SellerSubset q) const {
  if (q.mask() >= (std::uint32_t{1} << num_sellers_)) {
    throw std::invalid_argument("subset " + q.ToString() +
                                " is out of range for n=" +
                                std::to_string(num_sellers_));
  }
  switch (kind_) {
    case ValuationKind::kExplicit:
      return table_[q.mask()];
    case ValuationKind::kAnonymous:
      return table_[q.Cardinality()];
    case ValuationKind::kAdditive: {
      std::int64_t sum = 0;
      for (std::uint32_t m = q.mask(); m != 0; m &= m - 1) {
        sum += table_[std::countr_zero(m)];
      }
      return sum;
    }
  }
  return 0;
}

}  // namespace bafo
