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
// Descending auction with best-and-final offers: prices start high and the
// auction repeatedly asks some seller outside the tentative allocation to
// either accept a one-unit price cut or freeze. Frozen sellers stay in the
// auction at their frozen price; a price hitting zero freezes automatically.

#ifndef BAFO_DESCENDING_H_
#define BAFO_DESCENDING_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bafo/instance.h"
#include "bafo/market.h"
#include "bafo/tiebreak.h"
#include "bafo/types.h"

namespace bafo {

// Auction state: current offers and the set of frozen sellers.
// Invariants: frozen prices never change; price 0 implies frozen.
struct DescState {
  PriceVector prices;
  SellerSubset frozen;

  friend bool operator==(const DescState&, const DescState&) = default;
};

DescState InitialDescState(int num_sellers, Money initial_price);

enum class DescAction { kAccept, kFreeze };

// Picks the next seller to approach among those neither tentatively winning
// nor frozen; the auction terminates when no such seller exists.
class DescOrdering {
 public:
  using NextFn = std::function<SellerId(const DescState& state,
                                        SellerSubset tentative_winners,
                                        SellerSubset eligible)>;

  static DescOrdering LowestEligibleIndex();
  // First eligible seller in `priority` order; must be a permutation.
  static DescOrdering FixedPriority(std::vector<SellerId> priority);
  static DescOrdering Custom(std::string name, NextFn next);
  // Resolves "lowest-index" or "priority:ids,..."; throws ParseError.
  static DescOrdering FromName(std::string_view name);

  // nullopt means terminate. A returned seller is always eligible.
  std::optional<SellerId> Next(const DescState& state,
                               SellerSubset tentative_winners) const;

  void Validate(int num_sellers) const;
  const std::string& name() const { return name_; }

 private:
  DescOrdering(std::string name, std::vector<SellerId> priority, NextFn next);

  std::string name_;
  std::vector<SellerId> priority_;
  NextFn next_;
};

// Frozen sellers at their frozen price, everyone else at cost.
PriceVector HatPrices(const Instance& instance, const DescState& state);

// Winner selection at the current offer prices.
SellerSubset TentativeWinners(const Instance& instance,
                              const TieBreakRule& tie_break,
                              const DescState& state);

// Applies one action. Accept decrements the seller's price and freezes it
// automatically when it reaches zero. Throws std::invalid_argument for a
// frozen seller or an accept at price zero.
DescState Step(const DescState& state, SellerId seller, DescAction action);

// The strategy implied by the equilibrium analysis: freeze when winning at
// the frozen hat prices, accept when winning only at cost, freeze when
// losing either way. Throws std::invalid_argument for a frozen seller.
DescAction CanonicalDescAction(const Instance& instance,
                               const TieBreakRule& tie_break,
                               const DescState& state, SellerId seller);

struct DescContext {
  const Instance& instance;
  const TieBreakRule& tie_break;
  const DescOrdering& ordering;
  Money initial_price;
};

using DescActFn =
    std::function<DescAction(const DescContext&, const DescState&, SellerId)>;

struct DescProfile {
  std::string name;
  DescActFn act;
};

DescProfile CanonicalDescProfile();
DescProfile AlwaysAcceptProfile();
DescProfile AlwaysFreezeProfile();

// Initial price satisfying h >= 1, defaulting to max_Q v(Q).
Money DefaultInitialPrice(const Instance& instance);

struct DescEvent {
  int step = 0;
  SellerId seller = 0;
  DescAction action = DescAction::kFreeze;
  Money price_after = 0;
  // True when an accept hit zero and froze the seller automatically.
  bool auto_freeze = false;
};

struct DescRunResult {
  AuctionOutcome outcome;
  std::vector<DescEvent> events;
  Money initial_price = 0;
};

// Runs the auction loop under the given profile. Terminates after at most
// n * (h + 1) steps: every step freezes a seller or lowers a price.
DescRunResult RunDescending(const Instance& instance,
                            const TieBreakRule& tie_break,
                            const DescOrdering& ordering,
                            const DescProfile& profile, Money initial_price);

// Exact subgame perfect equilibrium by backward induction memoized on
// (prices, frozen). Orderings are functions of the observable state, so
// states are Markov and memoization is sound. Indifference resolution:
// higher utility, then winning over losing, then freeze over accept.
class DescEquilibrium {
 public:
  const AuctionOutcome& outcome() const { return outcome_; }
  const std::vector<DescEvent>& play() const { return play_; }

  // kAccept/kFreeze at a decision state; nullopt at a terminal state.
  std::optional<DescAction> ActionAt(const DescState& state) const;
  std::vector<std::int64_t> PayoffsAt(const DescState& state) const;
  SellerSubset ContinuationWinnersAt(const DescState& state) const;

  // Visits every memoized state with its equilibrium continuation winners.
  void ForEachState(
      const std::function<void(const DescState&, SellerSubset)>& fn) const;

  std::uint64_t node_count() const { return nodes_.size(); }
  Money initial_price() const { return initial_price_; }

 private:
  friend DescEquilibrium SolveDescendingExact(const Instance&,
                                              const TieBreakRule&,
                                              const DescOrdering&, Money,
                                              std::uint64_t);

  struct Node {
    std::uint64_t final_prices_packed = 0;
    std::uint32_t winners_mask = 0;
    std::int8_t action = 0;  // 0 terminal, 1 accept, 2 freeze
  };

  std::uint64_t Pack(const DescState& state) const;
  DescState Unpack(std::uint64_t key) const;
  PriceVector UnpackPrices(std::uint64_t packed) const;
  const Node& NodeAt(const DescState& state) const;
  std::vector<std::int64_t> PayoffsOf(const Node& node) const;

  int num_sellers_ = 0;
  int bits_per_price_ = 0;
  std::vector<Money> costs_;
  AuctionOutcome outcome_;
  std::vector<DescEvent> play_;
  std::unordered_map<std::uint64_t, Node> nodes_;
  Money initial_price_ = 0;
};

// Throws TooLargeError when (h+1)^n * 2^n exceeds `work_budget`.
DescEquilibrium SolveDescendingExact(
    const Instance& instance, const TieBreakRule& tie_break,
    const DescOrdering& ordering, Money initial_price,
    std::uint64_t work_budget = kDefaultWorkBudget);

struct DescDeviation {
  DescState state;
  SellerId seller = 0;
  DescAction profile_action = DescAction::kFreeze;
  DescAction better_action = DescAction::kFreeze;
  std::int64_t gain = 0;
};

// One-shot deviation check at every state reachable under any play from the
// initial state. Returns the first violation in depth-first order (accept
// child explored before freeze child), or nullopt.
std::optional<DescDeviation> VerifyDescendingSpe(
    const Instance& instance, const TieBreakRule& tie_break,
    const DescOrdering& ordering, const DescProfile& profile,
    Money initial_price, std::uint64_t work_budget = kDefaultWorkBudget);

// Closed-form outcome for weakly concave anonymous valuations: sort sellers
// by cost (ties by id); the winners are the maximal prefix whose size-k
// marginal v(k) - v(k-1) covers the k-th cost, and every winner is priced at
// the next marginal v(k+1) - v(k). When all n sellers win, the price falls
// back to v(n) - v(n-1). Throws std::invalid_argument unless the valuation
// is anonymous and weakly concave.
AuctionOutcome ConcaveThresholdOutcome(const Instance& instance);

}  // namespace bafo

#endif  // BAFO_DESCENDING_H_
