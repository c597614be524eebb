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

#ifndef BAFO_TIEBREAK_H_
#define BAFO_TIEBREAK_H_

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "bafo/types.h"

namespace bafo {

// A strict total order over seller subsets. Winner selection picks the first
// element of the demand set under this order, which makes the induced
// selection rule satisfy independence of irrelevant alternatives.
class TieBreakRule {
 public:
  enum class Order { kBefore, kAfter };

  // Higher cardinality first, then smaller mask. The default rule.
  static TieBreakRule MaxCardThenLexMask();
  // Smaller mask first.
  static TieBreakRule LexMask();
  // Caller-supplied ranking; `ranked` must list all 2^num_sellers subsets
  // exactly once, most preferred first.
  static TieBreakRule ExplicitRanking(int num_sellers,
                                      const std::vector<SellerSubset>& ranked);
  // Resolves "max-card-lex" or "lex-mask"; throws ParseError otherwise.
  static TieBreakRule FromName(std::string_view name);

  // True if `a` is selected in preference to `b`. a != b required.
  bool Precedes(SellerSubset a, SellerSubset b) const { return precedes_(a, b); }

  // Strict comparison; throws std::invalid_argument if a == b.
  Order Compare(SellerSubset a, SellerSubset b) const;

  const std::string& name() const { return name_; }

 private:
  TieBreakRule(std::string name,
               std::function<bool(SellerSubset, SellerSubset)> precedes);

  std::string name_;
  std::function<bool(SellerSubset, SellerSubset)> precedes_;
};

}  // namespace bafo

#endif  // BAFO_TIEBREAK_H_
