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

#include "bafo/descending.h"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>

#include "bafo/checks.h"

namespace bafo {
namespace {

std::uint64_t PackPrices(const PriceVector& prices, int bits_per_price) {
  std::uint64_t packed = 0;
  int shift = 0;
  for (Money p : prices) {
    packed |= static_cast<std::uint64_t>(p) << shift;
    shift += bits_per_price;
  }
  return packed;
}

constexpr std::int8_t kNodeTerminal = 0;
constexpr std::int8_t kNodeAccept = 1;
constexpr std::int8_t kNodeFreeze = 2;

std::uint64_t LatticeBound(int n, Money h) {
  unsigned __int128 total = 1;
  for (int i = 0; i < n; ++i) {
    total *= static_cast<unsigned __int128>(h) + 1;
    if (total > ~std::uint64_t{0}) return ~std::uint64_t{0};
  }
  for (int i = 0; i < n; ++i) {
    total *= 2;
    if (total > ~std::uint64_t{0}) return ~std::uint64_t{0};
  }
  return static_cast<std::uint64_t>(total);
}

void CheckBudget(const Instance& instance, Money h,
                 std::uint64_t work_budget) {
  if (h < 1) throw std::invalid_argument("initial price must be at least 1");
  const std::uint64_t bound = LatticeBound(instance.num_sellers(), h);
  if (bound > work_budget) {
    throw TooLargeError("state space of " + std::to_string(bound) +
                        " nodes exceeds the work budget " +
                        std::to_string(work_budget));
  }
  // States are keyed as n frozen bits plus n fixed-width prices in one word.
  const int n = instance.num_sellers();
  const int bits = std::bit_width(static_cast<std::uint64_t>(h));
  if (n + n * bits > 63) {
    throw TooLargeError("state space is too large to index");
  }
}

SellerSubset EligibleSellers(int n, const DescState& state,
                             SellerSubset tentative_winners) {
  const std::uint32_t all = SellerSubset::All(n).mask();
  return SellerSubset(all & ~tentative_winners.mask() & ~state.frozen.mask());
}

}  // namespace

DescState InitialDescState(int num_sellers, Money initial_price) {
  if (initial_price < 1) {
    throw std::invalid_argument("initial price must be at least 1");
  }
  return DescState{PriceVector(num_sellers, initial_price), SellerSubset()};
}

DescOrdering::DescOrdering(std::string name, std::vector<SellerId> priority,
                           NextFn next)
    : name_(std::move(name)),
      priority_(std::move(priority)),
      next_(std::move(next)) {}

DescOrdering DescOrdering::LowestEligibleIndex() {
  return DescOrdering("lowest-index", {}, nullptr);
}

DescOrdering DescOrdering::FixedPriority(std::vector<SellerId> priority) {
  std::string name = "priority:";
  for (std::size_t i = 0; i < priority.size(); ++i) {
    if (i > 0) name += ",";
    name += std::to_string(priority[i]);
  }
  return DescOrdering(std::move(name), std::move(priority), nullptr);
}

DescOrdering DescOrdering::Custom(std::string name, NextFn next) {
  if (!next) throw std::invalid_argument("custom ordering needs a rule");
  return DescOrdering(std::move(name), {}, std::move(next));
}

DescOrdering DescOrdering::FromName(std::string_view name) {
  if (name == "lowest-index") return LowestEligibleIndex();
  const std::string_view prefix = "priority:";
  if (name.substr(0, prefix.size()) == prefix) {
    std::vector<SellerId> ids;
    std::string token;
    const auto flush = [&] {
      if (token.empty() || token.size() > 2) {
        throw ParseError("bad ordering spec: " + std::string(name));
      }
      ids.push_back(std::stoi(token));
      token.clear();
    };
    for (char c : name.substr(prefix.size())) {
      if (c == ',') {
        flush();
      } else if (c >= '0' && c <= '9') {
        token += c;
      } else {
        throw ParseError("bad ordering spec: " + std::string(name));
      }
    }
    flush();
    return FixedPriority(std::move(ids));
  }
  throw ParseError("unknown ordering: " + std::string(name));
}

void DescOrdering::Validate(int num_sellers) const {
  if (priority_.empty()) return;
  if (priority_.size() != static_cast<std::size_t>(num_sellers)) {
    throw std::invalid_argument("priority list must cover all " +
                                std::to_string(num_sellers) + " sellers");
  }
  std::vector<bool> seen(num_sellers, false);
  for (SellerId i : priority_) {
    if (i < 0 || i >= num_sellers || seen[i]) {
      throw std::invalid_argument("priority list must be a permutation");
    }
    seen[i] = true;
  }
}

std::optional<SellerId> DescOrdering::Next(
    const DescState& state, SellerSubset tentative_winners) const {
  const int n = static_cast<int>(state.prices.size());
  const SellerSubset eligible = EligibleSellers(n, state, tentative_winners);
  if (eligible.IsEmpty()) return std::nullopt;
  if (next_) {
    const SellerId chosen = next_(state, tentative_winners, eligible);
    if (chosen < 0 || chosen >= n || !eligible.Contains(chosen)) {
      throw std::invalid_argument("ordering picked an ineligible seller " +
                                  std::to_string(chosen));
    }
    return chosen;
  }
  if (!priority_.empty()) {
    for (SellerId i : priority_) {
      if (eligible.Contains(i)) return i;
    }
    return std::nullopt;  // unreachable for a valid permutation
  }
  return std::countr_zero(eligible.mask());
}

PriceVector HatPrices(const Instance& instance, const DescState& state) {
  const int n = instance.num_sellers();
  PriceVector hat(instance.costs());
  for (SellerId i = 0; i < n; ++i) {
    if (state.frozen.Contains(i)) hat[i] = state.prices[i];
  }
  return hat;
}

SellerSubset TentativeWinners(const Instance& instance,
                              const TieBreakRule& tie_break,
                              const DescState& state) {
  return SelectWinner(instance.valuation(), state.prices, tie_break);
}

DescState Step(const DescState& state, SellerId seller, DescAction action) {
  if (seller < 0 || seller >= static_cast<int>(state.prices.size())) {
    throw std::invalid_argument("seller id out of range");
  }
  if (state.frozen.Contains(seller)) {
    throw std::invalid_argument("seller " + std::to_string(seller) +
                                " is already frozen");
  }
  DescState next = state;
  if (action == DescAction::kFreeze) {
    next.frozen = next.frozen.With(seller);
    return next;
  }
  if (state.prices[seller] < 1) {
    throw std::invalid_argument("cannot lower a price below zero");
  }
  next.prices[seller] -= 1;
  if (next.prices[seller] == 0) {
    next.frozen = next.frozen.With(seller);
  }
  return next;
}

DescAction CanonicalDescAction(const Instance& instance,
                               const TieBreakRule& tie_break,
                               const DescState& state, SellerId seller) {
  if (state.frozen.Contains(seller)) {
    throw std::invalid_argument("seller " + std::to_string(seller) +
                                " is already frozen");
  }
  PriceVector hat = HatPrices(instance, state);
  hat[seller] = state.prices[seller];
  if (SelectWinner(instance.valuation(), hat, tie_break).Contains(seller)) {
    return DescAction::kFreeze;  // wins while frozen at the current price
  }
  hat[seller] = instance.cost(seller);
  if (SelectWinner(instance.valuation(), hat, tie_break).Contains(seller)) {
    return DescAction::kAccept;  // wins only by staying in the descent
  }
  return DescAction::kFreeze;  // loses either way
}

DescProfile CanonicalDescProfile() {
  return DescProfile{
      "canonical",
      [](const DescContext& ctx, const DescState& state, SellerId seller) {
        return CanonicalDescAction(ctx.instance, ctx.tie_break, state, seller);
      }};
}

DescProfile AlwaysAcceptProfile() {
  return DescProfile{"always-accept",
                     [](const DescContext&, const DescState&, SellerId) {
                       return DescAction::kAccept;
                     }};
}

DescProfile AlwaysFreezeProfile() {
  return DescProfile{"always-freeze",
                     [](const DescContext&, const DescState&, SellerId) {
                       return DescAction::kFreeze;
                     }};
}

Money DefaultInitialPrice(const Instance& instance) {
  return std::max<Money>(1, instance.valuation().MaxValue());
}

DescRunResult RunDescending(const Instance& instance,
                            const TieBreakRule& tie_break,
                            const DescOrdering& ordering,
                            const DescProfile& profile, Money initial_price) {
  ordering.Validate(instance.num_sellers());
  const int n = instance.num_sellers();
  DescContext ctx{instance, tie_break, ordering, initial_price};
  DescRunResult result;
  result.initial_price = initial_price;
  DescState state = InitialDescState(n, initial_price);
  const std::int64_t max_steps =
      static_cast<std::int64_t>(n) * (initial_price + 1);
  int step = 0;
  while (true) {
    const SellerSubset tentative = TentativeWinners(instance, tie_break, state);
    const std::optional<SellerId> seller = ordering.Next(state, tentative);
    if (!seller.has_value()) break;
    const DescAction action = profile.act(ctx, state, *seller);
    state = Step(state, *seller, action);
    const bool auto_freeze = action == DescAction::kAccept &&
                             state.frozen.Contains(*seller);
    result.events.push_back(
        {step, *seller, action, state.prices[*seller], auto_freeze});
    ++step;
    if (step > max_steps) {
      throw std::logic_error("descending run exceeded its step bound");
    }
  }
  result.outcome = MakeOutcome(
      instance, SelectWinner(instance.valuation(), state.prices, tie_break),
      state.prices);
  return result;
}

std::uint64_t DescEquilibrium::Pack(const DescState& state) const {
  std::uint64_t key = state.frozen.mask();
  int shift = num_sellers_;
  for (SellerId i = 0; i < num_sellers_; ++i) {
    key |= static_cast<std::uint64_t>(state.prices[i]) << shift;
    shift += bits_per_price_;
  }
  return key;
}

DescState DescEquilibrium::Unpack(std::uint64_t key) const {
  DescState state;
  state.frozen = SellerSubset(
      static_cast<std::uint32_t>(key & ((std::uint64_t{1} << num_sellers_) - 1)));
  state.prices.resize(num_sellers_);
  std::uint64_t rest = key >> num_sellers_;
  const std::uint64_t mask = (std::uint64_t{1} << bits_per_price_) - 1;
  for (SellerId i = 0; i < num_sellers_; ++i) {
    state.prices[i] = static_cast<Money>(rest & mask);
    rest >>= bits_per_price_;
  }
  return state;
}

PriceVector DescEquilibrium::UnpackPrices(std::uint64_t packed) const {
  PriceVector prices(num_sellers_);
  const std::uint64_t mask = (std::uint64_t{1} << bits_per_price_) - 1;
  std::uint64_t rest = packed;
  for (SellerId i = 0; i < num_sellers_; ++i) {
    prices[i] = static_cast<Money>(rest & mask);
    rest >>= bits_per_price_;
  }
  return prices;
}

const DescEquilibrium::Node& DescEquilibrium::NodeAt(
    const DescState& state) const {
  const auto it = nodes_.find(Pack(state));
  if (it == nodes_.end()) {
    throw std::invalid_argument("state was not reached by the solver");
  }
  return it->second;
}

std::vector<std::int64_t> DescEquilibrium::PayoffsOf(const Node& node) const {
  const PriceVector final_prices = UnpackPrices(node.final_prices_packed);
  std::vector<std::int64_t> payoffs(num_sellers_, 0);
  for (SellerId i = 0; i < num_sellers_; ++i) {
    if ((node.winners_mask >> i) & 1u) {
      payoffs[i] = final_prices[i] - costs_[i];
    }
  }
  return payoffs;
}

std::optional<DescAction> DescEquilibrium::ActionAt(
    const DescState& state) const {
  const Node& node = NodeAt(state);
  if (node.action == kNodeTerminal) return std::nullopt;
  return node.action == kNodeAccept ? DescAction::kAccept
                                    : DescAction::kFreeze;
}

std::vector<std::int64_t> DescEquilibrium::PayoffsAt(
    const DescState& state) const {
  return PayoffsOf(NodeAt(state));
}

SellerSubset DescEquilibrium::ContinuationWinnersAt(
    const DescState& state) const {
  return SellerSubset(NodeAt(state).winners_mask);
}

void DescEquilibrium::ForEachState(
    const std::function<void(const DescState&, SellerSubset)>& fn) const {
  for (const auto& [key, node] : nodes_) {
    fn(Unpack(key), SellerSubset(node.winners_mask));
  }
}

DescEquilibrium SolveDescendingExact(const Instance& instance,
                                     const TieBreakRule& tie_break,
                                     const DescOrdering& ordering,
                                     Money initial_price,
                                     std::uint64_t work_budget) {
  ordering.Validate(instance.num_sellers());
  CheckBudget(instance, initial_price, work_budget);

  const int n = instance.num_sellers();
  DescEquilibrium eq;
  eq.num_sellers_ = n;
  eq.bits_per_price_ = std::bit_width(static_cast<std::uint64_t>(initial_price));
  eq.costs_ = instance.costs();
  eq.initial_price_ = initial_price;

  const DescState root = InitialDescState(n, initial_price);
  const std::uint64_t root_key = eq.Pack(root);

  // Iterative post-order evaluation over the (prices, frozen) state graph.
  std::vector<std::uint64_t> stack;
  stack.push_back(root_key);
  while (!stack.empty()) {
    const std::uint64_t key = stack.back();
    if (eq.nodes_.contains(key)) {
      stack.pop_back();
      continue;
    }
    const DescState state = eq.Unpack(key);
    const SellerSubset tentative =
        TentativeWinners(instance, tie_break, state);
    const std::optional<SellerId> seller = ordering.Next(state, tentative);
    if (!seller.has_value()) {
      eq.nodes_[key] = {PackPrices(state.prices, eq.bits_per_price_),
                        tentative.mask(), kNodeTerminal};
      stack.pop_back();
      continue;
    }
    const std::uint64_t freeze_key =
        eq.Pack(Step(state, *seller, DescAction::kFreeze));
    const std::uint64_t accept_key =
        eq.Pack(Step(state, *seller, DescAction::kAccept));
    const auto freeze_it = eq.nodes_.find(freeze_key);
    const auto accept_it = eq.nodes_.find(accept_key);
    if (freeze_it == eq.nodes_.end() || accept_it == eq.nodes_.end()) {
      if (accept_it == eq.nodes_.end()) stack.push_back(accept_key);
      if (freeze_it == eq.nodes_.end()) stack.push_back(freeze_key);
      continue;
    }
    const auto payoff = [&](const DescEquilibrium::Node& node) {
      if (!((node.winners_mask >> *seller) & 1u)) return std::int64_t{0};
      const PriceVector prices = eq.UnpackPrices(node.final_prices_packed);
      return prices[*seller] - instance.cost(*seller);
    };
    const std::int64_t freeze_payoff = payoff(freeze_it->second);
    const std::int64_t accept_payoff = payoff(accept_it->second);
    const bool freeze_wins = (freeze_it->second.winners_mask >> *seller) & 1u;
    const bool accept_wins = (accept_it->second.winners_mask >> *seller) & 1u;
    // Freeze wins ties: higher payoff, then winning, then freeze over accept.
    bool choose_freeze;
    if (freeze_payoff != accept_payoff) {
      choose_freeze = freeze_payoff > accept_payoff;
    } else if (freeze_wins != accept_wins) {
      choose_freeze = freeze_wins;
    } else {
      choose_freeze = true;
    }
    const DescEquilibrium::Node& chosen =
        choose_freeze ? freeze_it->second : accept_it->second;
    eq.nodes_[key] = {chosen.final_prices_packed, chosen.winners_mask,
                      choose_freeze ? kNodeFreeze : kNodeAccept};
    stack.pop_back();
  }

  // Forward play along chosen actions.
  DescState state = root;
  int step = 0;
  while (true) {
    const DescEquilibrium::Node& node = eq.nodes_.at(eq.Pack(state));
    if (node.action == kNodeTerminal) break;
    const SellerSubset tentative =
        TentativeWinners(instance, tie_break, state);
    const SellerId seller = *ordering.Next(state, tentative);
    const DescAction action = node.action == kNodeAccept ? DescAction::kAccept
                                                         : DescAction::kFreeze;
    state = Step(state, seller, action);
    const bool auto_freeze =
        action == DescAction::kAccept && state.frozen.Contains(seller);
    eq.play_.push_back({step, seller, action, state.prices[seller],
                        auto_freeze});
    ++step;
  }
  eq.outcome_ = MakeOutcome(
      instance, SelectWinner(instance.valuation(), state.prices, tie_break),
      state.prices);
  return eq;
}

std::optional<DescDeviation> VerifyDescendingSpe(
    const Instance& instance, const TieBreakRule& tie_break,
    const DescOrdering& ordering, const DescProfile& profile,
    Money initial_price, std::uint64_t work_budget) {
  ordering.Validate(instance.num_sellers());
  CheckBudget(instance, initial_price, work_budget);
  const int n = instance.num_sellers();
  DescContext ctx{instance, tie_break, ordering, initial_price};

  // Payoff of `seller` when everyone follows the profile from `state` on.
  const auto playout = [&](DescState state, SellerId seller) {
    while (true) {
      const SellerSubset tentative =
          TentativeWinners(instance, tie_break, state);
      const std::optional<SellerId> acting = ordering.Next(state, tentative);
      if (!acting.has_value()) {
        const SellerSubset winners =
            SelectWinner(instance.valuation(), state.prices, tie_break);
        return winners.Contains(seller)
                   ? state.prices[seller] - instance.cost(seller)
                   : std::int64_t{0};
      }
      state = Step(state, *acting, profile.act(ctx, state, *acting));
    }
  };

  // Depth-first over states reachable under any play; accept child first.
  std::unordered_set<std::uint64_t> visited;
  const int bits = std::bit_width(static_cast<std::uint64_t>(initial_price));
  const auto pack = [&](const DescState& state) {
    std::uint64_t key = state.frozen.mask();
    int shift = n;
    for (SellerId i = 0; i < n; ++i) {
      key |= static_cast<std::uint64_t>(state.prices[i]) << shift;
      shift += bits;
    }
    return key;
  };

  std::optional<DescDeviation> witness;
  const std::function<void(const DescState&)> dfs = [&](const DescState& state) {
    if (witness.has_value()) return;
    if (!visited.insert(pack(state)).second) return;
    const SellerSubset tentative =
        TentativeWinners(instance, tie_break, state);
    const std::optional<SellerId> seller = ordering.Next(state, tentative);
    if (!seller.has_value()) return;
    const DescAction chosen = profile.act(ctx, state, *seller);
    const DescAction other = chosen == DescAction::kAccept
                                 ? DescAction::kFreeze
                                 : DescAction::kAccept;
    const std::int64_t chosen_payoff =
        playout(Step(state, *seller, chosen), *seller);
    const std::int64_t other_payoff =
        playout(Step(state, *seller, other), *seller);
    if (other_payoff > chosen_payoff) {
      witness = DescDeviation{state, *seller, chosen, other,
                              other_payoff - chosen_payoff};
      return;
    }
    dfs(Step(state, *seller, DescAction::kAccept));
    dfs(Step(state, *seller, DescAction::kFreeze));
  };
  dfs(InitialDescState(n, initial_price));
  return witness;
}

AuctionOutcome ConcaveThresholdOutcome(const Instance& instance) {
  const ConcavityResult concavity =
      CheckConcaveAnonymous(instance.valuation());  // throws if not anonymous
  if (!concavity.concave) {
    throw std::invalid_argument(
        "threshold pricing needs a weakly concave anonymous valuation");
  }
  const int n = instance.num_sellers();
  std::vector<SellerId> by_cost(n);
  for (SellerId i = 0; i < n; ++i) by_cost[i] = i;
  std::sort(by_cost.begin(), by_cost.end(), [&](SellerId a, SellerId b) {
    if (instance.cost(a) != instance.cost(b)) {
      return instance.cost(a) < instance.cost(b);
    }
    return a < b;
  });

  // Maximal prefix whose size marginal covers the next cheapest cost.
  int winner_count = 0;
  SellerSubset winners;
  for (int k = 1; k <= n; ++k) {
    const std::int64_t marginal = concavity.marginal_by_size[k - 1];
    if (marginal < instance.cost(by_cost[k - 1])) break;
    winners = winners.With(by_cost[k - 1]);
    winner_count = k;
  }

  PriceVector prices(n, 0);
  if (winner_count > 0) {
    const Money threshold =
        winner_count == n ? concavity.marginal_by_size[n - 1]
                          : concavity.marginal_by_size[winner_count];
    for (SellerId i : winners.Members()) prices[i] = threshold;
  }
  return MakeOutcome(instance, winners, prices);
}

}  // namespace bafo
