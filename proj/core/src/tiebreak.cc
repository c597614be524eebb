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

#include "bafo/tiebreak.h"

#include <stdexcept>
#include <utility>

namespace bafo {

TieBreakRule::TieBreakRule(
    std::string name, std::function<bool(SellerSubset, SellerSubset)> precedes)
    : name_(std::move(name)), precedes_(std::move(precedes)) {}

TieBreakRule TieBreakRule::MaxCardThenLexMask() {
  return TieBreakRule("max-card-lex", [](SellerSubset a, SellerSubset b) {
    if (a.Cardinality() != b.Cardinality()) {
      return a.Cardinality() > b.Cardinality();
    }
    return a.mask() < b.mask();
  });
}

TieBreakRule TieBreakRule::LexMask() {
  return TieBreakRule("lex-mask", [](SellerSubset a, SellerSubset b) {
    return a.mask() < b.mask();
  });
}

TieBreakRule TieBreakRule::ExplicitRanking(
    int num_sellers, const std::vector<SellerSubset>& ranked) {
  const std::size_t expected = std::size_t{1} << num_sellers;
  if (ranked.size() != expected) {
    throw std::invalid_argument("explicit ranking must list all " +
                                std::to_string(expected) + " subsets");
  }
  std::vector<int> rank(expected, -1);
  for (std::size_t pos = 0; pos < ranked.size(); ++pos) {
    const std::uint32_t m = ranked[pos].mask();
    if (m >= expected || rank[m] != -1) {
      throw std::invalid_argument(
          "explicit ranking must be a permutation of all subsets");
    }
    rank[m] = static_cast<int>(pos);
  }
  return TieBreakRule("explicit",
                      [rank = std::move(rank)](SellerSubset a, SellerSubset b) {
                        return rank[a.mask()] < rank[b.mask()];
                      });
}

TieBreakRule TieBreakRule::FromName(std::string_view name) {
  if (name == "max-card-lex") return MaxCardThenLexMask();
  if (name == "lex-mask") return LexMask();
  throw ParseError("unknown tie-break rule: " + std::string(name));
}

TieBreakRule::Order TieBreakRule::Compare(SellerSubset a,
                                          SellerSubset b) const {
  if (a == b) {
    throw std::invalid_argument("cannot order a subset against itself");
  }
  return precedes_(a, b) ? Order::kBefore : Order::kAfter;
}

}  // namespace bafo
