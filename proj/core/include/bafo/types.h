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

#ifndef BAFO_TYPES_H_
#define BAFO_TYPES_H_

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace bafo {

// All money is an exact integer count of one denomination unit (e.g. cents).
// There is no floating point anywhere in the engine; ties are exact.
using Money = std::int64_t;
using SellerId = int;

// Per-seller prices, indexed by seller id. Entries are non-negative.
using PriceVector = std::vector<Money>;

// Hard cap on the number of sellers. Winner determination is exhaustive over
// all 2^n subsets, so instances beyond this are rejected outright.
inline constexpr int kMaxSellers = 20;

// Default cap on solver state spaces (number of game states / grid nodes).
inline constexpr std::uint64_t kDefaultWorkBudget = 50'000'000;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation would exceed an exhaustive-enumeration bound or a solver work
// budget. The CLI maps this to exit code 3.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent serialized input. The CLI maps this to exit 2.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A set of sellers, encoded as an n-bit mask with bit i == seller i.
class SellerSubset {
 public:
  constexpr SellerSubset() : mask_(0) {}
  constexpr explicit SellerSubset(std::uint32_t mask) : mask_(mask) {}

  static constexpr SellerSubset All(int num_sellers) {
    return SellerSubset((num_sellers >= 32) ? ~0u
                                            : ((1u << num_sellers) - 1u));
  }
  static constexpr SellerSubset Singleton(SellerId i) {
    return SellerSubset(1u << i);
  }
  static SellerSubset FromIds(std::initializer_list<SellerId> ids) {
    std::uint32_t m = 0;
    for (SellerId i : ids) m |= 1u << i;
    return SellerSubset(m);
  }

  constexpr bool Contains(SellerId i) const { return (mask_ >> i) & 1u; }
  constexpr SellerSubset With(SellerId i) const {
    return SellerSubset(mask_ | (1u << i));
  }
  constexpr SellerSubset Without(SellerId i) const {
    return SellerSubset(mask_ & ~(1u << i));
  }
  constexpr int Cardinality() const { return std::popcount(mask_); }
  constexpr bool IsEmpty() const { return mask_ == 0; }
  constexpr std::uint32_t mask() const { return mask_; }

  // Member ids in ascending order.
  std::vector<SellerId> Members() const {
    std::vector<SellerId> ids;
    for (std::uint32_t m = mask_; m != 0; m &= m - 1) {
      ids.push_back(std::countr_zero(m));
    }
    return ids;
  }

  std::string ToString() const {
    std::string out = "{";
    bool first = true;
    for (SellerId i : Members()) {
      if (!first) out += ",";
      out += std::to_string(i);
      first = false;
    }
    return out + "}";
  }

  friend constexpr bool operator==(SellerSubset a, SellerSubset b) {
    return a.mask_ == b.mask_;
  }

 private:
  std::uint32_t mask_;
};

}  // namespace bafo

#endif  // BAFO_TYPES_H_
