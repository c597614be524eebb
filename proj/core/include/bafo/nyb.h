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
// Sequential name-your-price auction with best-and-final offers: sellers are
// approached once each, observe all earlier bids, and commit to a single bid.
// The buyer then purchases the utility-maximizing subset at the bid prices.

#ifndef BAFO_NYB_H_
#define BAFO_NYB_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bafo/instance.h"
#include "bafo/market.h"
#include "bafo/tiebreak.h"
#include "bafo/types.h"

namespace bafo {

// Approach order over sellers: a fixed permutation, or an adaptive rule that
// maps the observed bid prefix to the next unbid seller. Adaptive rules must
// be deterministic functions of the prefix only.
class NybOrder {
 public:
  using AdaptiveFn = std::function<SellerId(
      std::span<const Money> bids, std::span<const SellerId> approached)>;

  static NybOrder Fixed(std::vector<SellerId> order);
  static NybOrder Adaptive(std::string name, AdaptiveFn next);

  // Seller approached after observing `bids` (the k-th approach when k bids
  // have been placed). `approached` lists the sellers of those bids.
  SellerId NextSeller(std::span<const Money> bids,
                      std::span<const SellerId> approached) const;

  // Validates a fixed order against the instance size. Adaptive orders are
  // validated during play.
  void Validate(int num_sellers) const;

  const std::string& name() const { return name_; }
  bool fixed() const { return !fixed_order_.empty(); }
  const std::vector<SellerId>& fixed_order() const { return fixed_order_; }

 private:
  NybOrder(std::string name, std::vector<SellerId> order, AdaptiveFn fn);

  std::string name_;
  std::vector<SellerId> fixed_order_;
  AdaptiveFn adaptive_;
};

// Game node: the prefix of bids placed so far, with the sellers that placed
// them in approach order.
struct NybState {
  std::vector<Money> bids;
  std::vector<SellerId> approached;
};

struct NybContext {
  const Instance& instance;
  const TieBreakRule& tie_break;
  const NybOrder& order;
  Money bid_cap;
};

// Per-seller bidding rule: the bid of `seller` given the observed state.
using NybBidFn =
    std::function<Money(const NybContext&, const NybState&, SellerId)>;

struct NybProfile {
  std::string name;
  NybBidFn bid;
};

// The strategy from the equilibrium construction: bid the highest amount in
// [cost, cap] that still wins against conditional prices, or cost if no such
// amount exists.
NybProfile CanonicalNybProfile();
// Every seller bids the same fixed amount (clamped to the cap).
NybProfile ConstantBidProfile(Money amount);
// Every seller bids their own cost.
NybProfile CostBidProfile();

// Bid cap satisfying cap >= max cost and cap >= max_Q v(Q). Any bid pushing
// a winning set's total above max_Q v(Q) loses to the empty set, so the
// truncation loses no equilibrium.
Money DefaultBidCap(const Instance& instance);

// Prices after k bids: bid for approached sellers, cost for the rest.
PriceVector ConditionalPrices(const Instance& instance, const NybOrder& order,
                              std::span<const Money> bids);

// Winner selection and payments for a full bid vector indexed by seller id.
AuctionOutcome Settle(const Instance& instance, const TieBreakRule& tie_break,
                      const PriceVector& bids);

// Highest bid in [cost, bid_cap] that keeps the next seller in the selected
// winner set at conditional prices; the seller's cost when no bid wins.
Money CanonicalBid(const Instance& instance, const TieBreakRule& tie_break,
                   const NybOrder& order, std::span<const Money> bids,
                   Money bid_cap);

struct NybEvent {
  int step = 0;
  SellerId seller = 0;
  Money bid = 0;
};

struct NybRunResult {
  AuctionOutcome outcome;
  std::vector<NybEvent> events;
  Money bid_cap = 0;
};

// Plays the canonical profile from the root and settles.
NybRunResult RunCanonical(const Instance& instance,
                          const TieBreakRule& tie_break, const NybOrder& order,
                          Money bid_cap);

// Exact subgame perfect equilibrium of the bid-grid game, by backward
// induction over bids in [0, cap]. Seller indifference is resolved
// lexicographically: higher utility, then winning over losing at equal
// utility, then the higher bid. Equilibrium allocations are invariant to
// this resolution; bids need not be.
class NybEquilibrium {
 public:
  const AuctionOutcome& outcome() const { return outcome_; }
  const std::vector<NybEvent>& play() const { return play_; }

  // SPE bid of the seller acting after `bids`.
  Money ActionAt(std::span<const Money> bids) const;
  // Backward-induction payoff vector of the subgame after `bids`.
  std::vector<std::int64_t> PayoffsAt(std::span<const Money> bids) const;
  // Winners of the equilibrium continuation after `bids`.
  SellerSubset ContinuationWinnersAt(std::span<const Money> bids) const;

  std::uint64_t node_count() const { return node_count_; }
  Money bid_cap() const { return bid_cap_; }

 private:
  friend class NybSolverImpl;

  struct Node {
    std::vector<std::int64_t> payoffs;
    SellerSubset winners;
    Money chosen_bid = 0;
  };

  AuctionOutcome outcome_;
  std::vector<NybEvent> play_;
  std::map<std::vector<Money>, Node> nodes_;
  Money bid_cap_ = 0;
  std::uint64_t node_count_ = 0;
};

// Throws TooLargeError when (cap+1)^n * 2^n exceeds `work_budget`.
NybEquilibrium SolveNybExact(const Instance& instance,
                             const TieBreakRule& tie_break,
                             const NybOrder& order, Money bid_cap,
                             std::uint64_t work_budget = kDefaultWorkBudget);

// One-shot deviation found by the verifier: at the node reached by `bids`,
// `seller` improves their continuation payoff by `gain` when switching from
// the profile's bid to `better_bid`.
struct NybDeviation {
  std::vector<Money> bids;
  std::vector<SellerId> approached;
  SellerId seller = 0;
  Money profile_bid = 0;
  Money better_bid = 0;
  std::int64_t gain = 0;
};

// Checks the one-shot deviation condition at every node of the bid-grid
// tree (reachable or not under the profile); in this finite-horizon game
// that is equivalent to subgame perfection. Returns the first violation in
// depth-first post-order (children by ascending bid, subgames before their
// parent), or nullopt.
std::optional<NybDeviation> VerifyNybSpe(
    const Instance& instance, const TieBreakRule& tie_break,
    const NybOrder& order, const NybProfile& profile, Money bid_cap,
    std::uint64_t work_budget = kDefaultWorkBudget);

}  // namespace bafo

#endif  // BAFO_NYB_H_
