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

#ifndef BAFO_VALUATION_H_
#define BAFO_VALUATION_H_

#include <cstdint>
#include <vector>

#include "bafo/types.h"

namespace bafo {

enum class ValuationKind { kExplicit, kAnonymous, kAdditive };

// Integer-valued combinatorial valuation over seller subsets.
// v(empty) == 0 is enforced at construction; values are defined for every
// subset of [0, n).
class Valuation {
 public:
  // One value per subset mask; values.size() must be 2^num_sellers and
  // values[0] must be 0.
  static Valuation Explicit(int num_sellers,
                            std::vector<std::int64_t> value_by_mask);
  // One value per subset size; values.size() must be num_sellers + 1 and
  // values[0] must be 0.
  static Valuation Anonymous(int num_sellers,
                             std::vector<std::int64_t> value_by_size);
  // v(Q) = sum of per-seller weights over Q.
  static Valuation Additive(std::vector<std::int64_t> weight_by_seller);
  // v(Q) = max weight in Q (0 for the empty set), materialized as an
  // explicit table. Convenience for a well-known substitutes subclass.
  static Valuation UnitDemand(std::vector<std::int64_t> weight_by_seller);

  std::int64_t Value(SellerSubset q) const;

  int num_sellers() const { return num_sellers_; }
  ValuationKind kind() const { return kind_; }
  // Raw table: by mask (explicit), by size (anonymous), or per-seller
  // weights (additive).
  const std::vector<std::int64_t>& table() const { return table_; }
  // max_Q v(Q); at least 0 since v(empty) = 0.
  std::int64_t MaxValue() const { return max_value_; }

 private:
  Valuation(ValuationKind kind, int num_sellers,
            std::vector<std::int64_t> table);

  ValuationKind kind_;
  int num_sellers_;
  std::vector<std::int64_t> table_;
  std::int64_t max_value_;
};

}  // namespace bafo

#endif  // BAFO_VALUATION_H_
