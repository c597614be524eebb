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

#include "bafo/nyb.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace bafo {
namespace {

// Lattice bound (cap+1)^n * 2^n, saturating.
std::uint64_t GridBound(int n, Money cap) {
  unsigned __int128 total = 1;
  for (int i = 0; i < n; ++i) {
    total *= static_cast<unsigned __int128>(cap) + 1;
    if (total > ~std::uint64_t{0}) return ~std::uint64_t{0};
  }
  for (int i = 0; i < n; ++i) {
    total *= 2;
    if (total > ~std::uint64_t{0}) return ~std::uint64_t{0};
  }
  return static_cast<std::uint64_t>(total);
}

void CheckBudget(const Instance& instance, Money cap,
                 std::uint64_t work_budget) {
  if (cap < 0) throw std::invalid_argument("bid cap must be non-negative");
  const std::uint64_t bound = GridBound(instance.num_sellers(), cap);
  if (bound > work_budget) {
    throw TooLargeError(
        "bid grid of " + std::to_string(bound) +
        " nodes exceeds the work budget " + std::to_string(work_budget));
  }
}

PriceVector BidsBySeller(const Instance& instance,
                         std::span<const Money> bids,
                         std::span<const SellerId> approached) {
  PriceVector by_seller(instance.costs());
  for (std::size_t k = 0; k < bids.size(); ++k) {
    by_seller[approached[k]] = bids[k];
  }
  return by_seller;
}

}  // namespace

NybOrder::NybOrder(std::string name, std::vector<SellerId> order,
                   AdaptiveFn fn)
    : name_(std::move(name)),
      fixed_order_(std::move(order)),
      adaptive_(std::move(fn)) {}

NybOrder NybOrder::Fixed(std::vector<SellerId> order) {
  std::string name;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0) name += ",";
    name += std::to_string(order[i]);
  }
  return NybOrder("fixed:" + name, std::move(order), nullptr);
}

NybOrder NybOrder::Adaptive(std::string name, AdaptiveFn next) {
  if (!next) throw std::invalid_argument("adaptive order needs a rule");
  return NybOrder(std::move(name), {}, std::move(next));
}

void NybOrder::Validate(int num_sellers) const {
  if (fixed_order_.empty()) return;
  if (fixed_order_.size() != static_cast<std::size_t>(num_sellers)) {
    throw std::invalid_argument("order must list each of the " +
                                std::to_string(num_sellers) +
                                " sellers exactly once");
  }
  std::vector<bool> seen(num_sellers, false);
  for (SellerId i : fixed_order_) {
    if (i < 0 || i >= num_sellers || seen[i]) {
      throw std::invalid_argument("order must be a permutation of 0.." +
                                  std::to_string(num_sellers - 1));
    }
    seen[i] = true;
  }
}

SellerId NybOrder::NextSeller(std::span<const Money> bids,
                              std::span<const SellerId> approached) const {
  SellerId next;
  if (!fixed_order_.empty()) {
    if (approached.size() >= fixed_order_.size()) {
      throw std::invalid_argument("every seller has already been approached");
    }
    next = fixed_order_[approached.size()];
  } else {
    next = adaptive_(bids, approached);
  }
  for (SellerId prev : approached) {
    if (prev == next) {
      throw std::invalid_argument("order approached seller " +
                                  std::to_string(next) + " twice");
    }
  }
  return next;
}

Money DefaultBidCap(const Instance& instance) {
  return std::max(instance.valuation().MaxValue(), instance.MaxCost());
}

PriceVector ConditionalPrices(const Instance& instance, const NybOrder& order,
                              std::span<const Money> bids) {
  std::vector<SellerId> approached;
  approached.reserve(bids.size());
  for (std::size_t k = 0; k < bids.size(); ++k) {
    approached.push_back(order.NextSeller(bids.first(k), approached));
  }
  return BidsBySeller(instance, bids, approached);
}

AuctionOutcome Settle(const Instance& instance, const TieBreakRule& tie_break,
                      const PriceVector& bids) {
  const SellerSubset winners =
      SelectWinner(instance.valuation(), bids, tie_break);
  return MakeOutcome(instance, winners, bids);
}

Money CanonicalBid(const Instance& instance, const TieBreakRule& tie_break,
                   const NybOrder& order, std::span<const Money> bids,
                   Money bid_cap) {
  std::vector<SellerId> approached;
  for (std::size_t k = 0; k < bids.size(); ++k) {
    approached.push_back(order.NextSeller(bids.first(k), approached));
  }
  const SellerId seller = order.NextSeller(bids, approached);
  PriceVector prices = BidsBySeller(instance, bids, approached);
  for (Money b = bid_cap; b >= instance.cost(seller); --b) {
    prices[seller] = b;
    if (SelectWinner(instance.valuation(), prices, tie_break)
            .Contains(seller)) {
      return b;
    }
  }
  return instance.cost(seller);
}

NybProfile CanonicalNybProfile() {
  return NybProfile{
      "canonical",
      [](const NybContext& ctx, const NybState& state, SellerId) {
        return CanonicalBid(ctx.instance, ctx.tie_break, ctx.order,
                            state.bids, ctx.bid_cap);
      }};
}

NybProfile ConstantBidProfile(Money amount) {
  return NybProfile{
      "constant-bid:" + std::to_string(amount),
      [amount](const NybContext& ctx, const NybState&, SellerId) {
        return std::min(amount, ctx.bid_cap);
      }};
}

NybProfile CostBidProfile() {
  return NybProfile{
      "cost-bid", [](const NybContext& ctx, const NybState&, SellerId seller) {
        return ctx.instance.cost(seller);
      }};
}

NybRunResult RunCanonical(const Instance& instance,
                          const TieBreakRule& tie_break, const NybOrder& order,
                          Money bid_cap) {
  order.Validate(instance.num_sellers());
  const int n = instance.num_sellers();
  NybRunResult result;
  result.bid_cap = bid_cap;
  std::vector<Money> bids;
  std::vector<SellerId> approached;
  for (int k = 0; k < n; ++k) {
    const SellerId seller = order.NextSeller(bids, approached);
    const Money bid = CanonicalBid(instance, tie_break, order, bids, bid_cap);
    result.events.push_back({k, seller, bid});
    bids.push_back(bid);
    approached.push_back(seller);
  }
  result.outcome =
      Settle(instance, tie_break, BidsBySeller(instance, bids, approached));
  return result;
}

Money NybEquilibrium::ActionAt(std::span<const Money> bids) const {
  const auto it = nodes_.find(std::vector<Money>(bids.begin(), bids.end()));
  if (it == nodes_.end()) {
    throw std::invalid_argument("no decision node for the given bid prefix");
  }
  return it->second.chosen_bid;
}

std::vector<std::int64_t> NybEquilibrium::PayoffsAt(
    std::span<const Money> bids) const {
  const auto it = nodes_.find(std::vector<Money>(bids.begin(), bids.end()));
  if (it == nodes_.end()) {
    throw std::invalid_argument("no decision node for the given bid prefix");
  }
  return it->second.payoffs;
}

SellerSubset NybEquilibrium::ContinuationWinnersAt(
    std::span<const Money> bids) const {
  const auto it = nodes_.find(std::vector<Money>(bids.begin(), bids.end()));
  if (it == nodes_.end()) {
    throw std::invalid_argument("no decision node for the given bid prefix");
  }
  return it->second.winners;
}

class NybSolverImpl {
 public:
  NybSolverImpl(const Instance& instance, const TieBreakRule& tie_break,
                const NybOrder& order, Money cap)
      : instance_(instance), tie_break_(tie_break), order_(order), cap_(cap) {}

  NybEquilibrium Solve() {
    NybEquilibrium eq;
    eq.bid_cap_ = cap_;
    std::vector<Money> bids;
    std::vector<SellerId> approached;
    Eval(bids, approached, eq);

    // Forward play from the root along chosen bids.
    bids.clear();
    approached.clear();
    const int n = instance_.num_sellers();
    for (int k = 0; k < n; ++k) {
      const SellerId seller = order_.NextSeller(bids, approached);
      const Money bid = eq.nodes_.at(bids).chosen_bid;
      eq.play_.push_back({k, seller, bid});
      bids.push_back(bid);
      approached.push_back(seller);
    }
    eq.outcome_ = Settle(instance_, tie_break_,
                         BidsBySeller(instance_, bids, approached));
    eq.node_count_ = node_count_;
    return eq;
  }

 private:
  NybEquilibrium::Node Eval(std::vector<Money>& bids,
                            std::vector<SellerId>& approached,
                            NybEquilibrium& eq) {
    ++node_count_;
    const int n = instance_.num_sellers();
    if (bids.size() == static_cast<std::size_t>(n)) {
      const AuctionOutcome out = Settle(
          instance_, tie_break_, BidsBySeller(instance_, bids, approached));
      return {out.seller_utilities, out.winners, 0};
    }
    const SellerId seller = order_.NextSeller(bids, approached);
    approached.push_back(seller);

    NybEquilibrium::Node best;
    bool have_best = false;
    bool best_wins = false;
    for (Money b = 0; b <= cap_; ++b) {
      bids.push_back(b);
      NybEquilibrium::Node child = Eval(bids, approached, eq);
      bids.pop_back();
      const std::int64_t payoff = child.payoffs[seller];
      const bool wins = child.winners.Contains(seller);
      // Higher payoff first, then winning, then the higher bid: a tie on
      // (payoff, wins) is replaced because b only increases.
      const bool better =
          !have_best || payoff > best.payoffs[seller] ||
          (payoff == best.payoffs[seller] && (wins || !best_wins));
      if (better) {
        best = std::move(child);
        best.chosen_bid = b;
        best_wins = wins;
        have_best = true;
      }
    }
    approached.pop_back();
    eq.nodes_[bids] = best;
    return best;
  }

  const Instance& instance_;
  const TieBreakRule& tie_break_;
  const NybOrder& order_;
  Money cap_;
  std::uint64_t node_count_ = 0;
};

NybEquilibrium SolveNybExact(const Instance& instance,
                             const TieBreakRule& tie_break,
                             const NybOrder& order, Money bid_cap,
                             std::uint64_t work_budget) {
  order.Validate(instance.num_sellers());
  CheckBudget(instance, bid_cap, work_budget);
  return NybSolverImpl(instance, tie_break, order, bid_cap).Solve();
}

namespace {

class NybVerifier {
 public:
  NybVerifier(const Instance& instance, const TieBreakRule& tie_break,
              const NybOrder& order, const NybProfile& profile, Money cap)
      : ctx_{instance, tie_break, order, cap}, profile_(profile) {}

  std::optional<NybDeviation> Verify() {
    std::vector<Money> bids;
    std::vector<SellerId> approached;
    return Dfs(bids, approached);
  }

 private:
  Money ProfileBid(const std::vector<Money>& bids,
                   const std::vector<SellerId>& approached,
                   SellerId seller) const {
    const Money bid = profile_.bid(ctx_, NybState{bids, approached}, seller);
    if (bid < 0 || bid > ctx_.bid_cap) {
      throw std::invalid_argument("profile bid " + std::to_string(bid) +
                                  " is outside [0, " +
                                  std::to_string(ctx_.bid_cap) + "]");
    }
    return bid;
  }

  // Payoff of `seller` when everyone follows the profile from this node on.
  std::int64_t PlayoutPayoff(std::vector<Money>& bids,
                             std::vector<SellerId>& approached,
                             SellerId seller) {
    const std::size_t depth = bids.size();
    const int n = ctx_.instance.num_sellers();
    while (bids.size() < static_cast<std::size_t>(n)) {
      const SellerId acting = ctx_.order.NextSeller(bids, approached);
      const Money bid = ProfileBid(bids, approached, acting);
      bids.push_back(bid);
      approached.push_back(acting);
    }
    const AuctionOutcome out =
        Settle(ctx_.instance, ctx_.tie_break,
               BidsBySeller(ctx_.instance, bids, approached));
    bids.resize(depth);
    approached.resize(depth);
    return out.seller_utilities[seller];
  }

  // Post-order: subgames are certified before their parent, mirroring the
  // backward induction that defines the equilibrium.
  std::optional<NybDeviation> Dfs(std::vector<Money>& bids,
                                  std::vector<SellerId>& approached) {
    const int n = ctx_.instance.num_sellers();
    if (bids.size() == static_cast<std::size_t>(n)) return std::nullopt;
    const SellerId seller = ctx_.order.NextSeller(bids, approached);
    const Money profile_bid = ProfileBid(bids, approached, seller);

    approached.push_back(seller);
    std::optional<NybDeviation> witness;
    for (Money b = 0; b <= ctx_.bid_cap && !witness; ++b) {
      bids.push_back(b);
      witness = Dfs(bids, approached);
      bids.pop_back();
    }
    if (!witness) {
      bids.push_back(profile_bid);
      const std::int64_t profile_payoff =
          PlayoutPayoff(bids, approached, seller);
      bids.pop_back();
      for (Money b = 0; b <= ctx_.bid_cap && !witness; ++b) {
        if (b == profile_bid) continue;
        bids.push_back(b);
        const std::int64_t payoff = PlayoutPayoff(bids, approached, seller);
        bids.pop_back();
        if (payoff > profile_payoff) {
          witness = NybDeviation{bids,
                                 {approached.begin(), approached.end() - 1},
                                 seller,
                                 profile_bid,
                                 b,
                                 payoff - profile_payoff};
        }
      }
    }
    approached.pop_back();
    return witness;
  }

  NybContext ctx_;
  const NybProfile& profile_;
};

}  // namespace

std::optional<NybDeviation> VerifyNybSpe(const Instance& instance,
                                         const TieBreakRule& tie_break,
                                         const NybOrder& order,
                                         const NybProfile& profile,
                                         Money bid_cap,
                                         std::uint64_t work_budget) {
  order.Validate(instance.num_sellers());
  CheckBudget(instance, bid_cap, work_budget);
  return NybVerifier(instance, tie_break, order, profile, bid_cap).Verify();
}

}  // namespace bafo
