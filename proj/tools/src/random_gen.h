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

#ifndef BAFO_CLI_RANDOM_GEN_H_
#define BAFO_CLI_RANDOM_GEN_H_

#include <cstdint>
#include <string>

#include "bafo/instance.h"

namespace bafo::cli {

// Deterministic 64-bit generator (splitmix64). Output is identical across
// platforms and compilers, which keeps seeded fixtures reproducible.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound]; bound >= 0.
  std::int64_t NextInt(std::int64_t bound) {
    return static_cast<std::int64_t>(Next() %
                                     (static_cast<std::uint64_t>(bound) + 1));
  }

 private:
  std::uint64_t state_;
};

struct RandomInstanceSpec {
  std::uint64_t seed = 0;
  int num_sellers = 0;
  Money max_value = 0;
  Money max_cost = 0;
  // "explicit" | "anonymous" | "additive"
  std::string kind = "explicit";
  // Explicit kind only: repair v upward so it is monotone.
  bool monotone = false;
};

// Deterministic in the spec: the same seed always yields the same instance.
// Costs and values are uniform in their ranges; the empty set is pinned to 0.
Instance GenerateRandomInstance(const RandomInstanceSpec& spec);

}  // namespace bafo::cli

#endif  // BAFO_CLI_RANDOM_GEN_H_
