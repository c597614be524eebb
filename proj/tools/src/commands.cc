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

#include "commands.h"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bafo/checks.h"
#include "bafo/descending.h"
#include "bafo/market.h"
#include "bafo/nyb.h"

#include "CLI11.hpp"
#include "json.hpp"

#include "experiments.h"
#include "instance_io.h"
#include "random_gen.h"

namespace bafo::cli {
namespace {

using nlohmann::json;

json SubsetToJson(SellerSubset subset) {
  json arr = json::array();
  for (SellerId i : subset.Members()) arr.push_back(i);
  return arr;
}

std::vector<SellerId> ParseOrderSpec(const std::string& spec) {
  std::vector<SellerId> order;
  std::string token;
  for (char c : spec + ",") {
    if (c == ',') {
      if (token.empty() || token.size() > 2) {
        throw ParseError("bad order spec: " + spec);
      }
      order.push_back(std::stoi(token));
      token.clear();
    } else if (c >= '0' && c <= '9') {
      token += c;
    } else {
      throw ParseError("bad order spec: " + spec);
    }
  }
  return order;
}

struct CommonOptions {
  std::string instance_path;
  std::string tie_break_override;
  std::string order_spec;
  std::string ordering_spec = "lowest-index";
  std::string strategies = "canonical";
  Money bid_cap = -1;     // -1: derive from the instance
  Money initial_price = -1;
  std::string out_path;
};

struct LoadedSetup {
  Instance instance;
  TieBreakRule tie_break;
  std::string tie_break_name;
};

LoadedSetup LoadSetup(const CommonOptions& opts) {
  ParsedInstance parsed = LoadInstanceFile(opts.instance_path);
  std::string name = opts.tie_break_override.empty() ? parsed.tie_break_name
                                                     : opts.tie_break_override;
  return LoadedSetup{std::move(parsed.instance), TieBreakRule::FromName(name),
                     name};
}

NybOrder OrderFor(const Instance& instance, const CommonOptions& opts) {
  if (opts.order_spec.empty()) {
    std::vector<SellerId> identity(instance.num_sellers());
    for (int i = 0; i < instance.num_sellers(); ++i) identity[i] = i;
    return NybOrder::Fixed(std::move(identity));
  }
  NybOrder order = NybOrder::Fixed(ParseOrderSpec(opts.order_spec));
  try {
    order.Validate(instance.num_sellers());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return order;
}

DescOrdering OrderingFor(const Instance& instance, const CommonOptions& opts) {
  DescOrdering ordering = DescOrdering::FromName(opts.ordering_spec);
  try {
    ordering.Validate(instance.num_sellers());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return ordering;
}

void AddMetadata(json& report, const LoadedSetup& setup,
                 const std::optional<std::string>& order,
                 const std::optional<std::string>& ordering) {
  report["version"] = kFileFormatVersion;
  report["instance_hash"] =
      InstanceHashHex(setup.instance, setup.tie_break_name);
  report["tiebreak"] = setup.tie_break_name;
  report["order"] = order.has_value() ? json(*order) : json(nullptr);
  report["ordering"] = ordering.has_value() ? json(*ordering) : json(nullptr);
  report["seed"] = nullptr;
}

void EmitReport(const json& report, const std::string& out_path) {
  const std::string text = CanonicalDump(report);
  std::cout << text;
  if (!out_path.empty()) WriteFileOrThrow(out_path, text);
}

// Plays an arbitrary bid profile forward and settles.
NybRunResult RunNybProfile(const Instance& instance,
                           const TieBreakRule& tie_break,
                           const NybOrder& order, const NybProfile& profile,
                           Money cap) {
  order.Validate(instance.num_sellers());
  const NybContext ctx{instance, tie_break, order, cap};
  NybRunResult result;
  result.bid_cap = cap;
  NybState state;
  PriceVector bids(instance.costs());
  for (int k = 0; k < instance.num_sellers(); ++k) {
    const SellerId seller = order.NextSeller(state.bids, state.approached);
    const Money bid = profile.bid(ctx, state, seller);
    if (bid < 0 || bid > cap) {
      throw ParseError("strategy produced a bid outside [0, cap]");
    }
    result.events.push_back({k, seller, bid});
    state.bids.push_back(bid);
    state.approached.push_back(seller);
    bids[seller] = bid;
  }
  result.outcome = Settle(instance, tie_break, bids);
  return result;
}

int CmdRun(const std::string& format, const CommonOptions& opts) {
  const LoadedSetup setup = LoadSetup(opts);
  if (format == "nyb") {
    const NybOrder order = OrderFor(setup.instance, opts);
    const Money cap =
        opts.bid_cap >= 0 ? opts.bid_cap : DefaultBidCap(setup.instance);
    const NybProfile profile = opts.strategies == "canonical"
                                   ? CanonicalNybProfile()
                                   : LoadNybProfileFile(opts.strategies);
    const NybRunResult run = profile.name == "canonical"
                                 ? RunCanonical(setup.instance,
                                                setup.tie_break, order, cap)
                                 : RunNybProfile(setup.instance,
                                                 setup.tie_break, order,
                                                 profile, cap);
    std::vector<SellerId> approach;
    for (const NybEvent& e : run.events) approach.push_back(e.seller);
    EmitReport(NybTranscriptJson(setup.instance, setup.tie_break_name,
                                 approach, profile.name, run),
               opts.out_path);
    return kExitOk;
  }
  const DescOrdering ordering = OrderingFor(setup.instance, opts);
  const Money h = opts.initial_price >= 0 ? opts.initial_price
                                          : DefaultInitialPrice(setup.instance);
  const DescProfile profile = opts.strategies == "canonical"
                                  ? CanonicalDescProfile()
                                  : LoadDescProfileFile(opts.strategies);
  const DescRunResult run =
      RunDescending(setup.instance, setup.tie_break, ordering, profile, h);
  EmitReport(DescTranscriptJson(setup.instance, setup.tie_break_name,
                                ordering.name(), profile.name, run),
             opts.out_path);
  return kExitOk;
}

int CmdSolve(const std::string& format, const CommonOptions& opts) {
  const LoadedSetup setup = LoadSetup(opts);
  const std::uint64_t budget = WorkBudgetFromEnv();
  json report;
  const auto start = std::chrono::steady_clock::now();
  if (format == "nyb") {
    const NybOrder order = OrderFor(setup.instance, opts);
    const Money cap =
        opts.bid_cap >= 0 ? opts.bid_cap : DefaultBidCap(setup.instance);
    const NybEquilibrium eq =
        SolveNybExact(setup.instance, setup.tie_break, order, cap, budget);
    AddMetadata(report, setup, order.name(), std::nullopt);
    report["format"] = "nyb";
    report["bid_cap"] = cap;
    report["spe_winners"] = SubsetToJson(eq.outcome().winners);
    report["spe_prices"] = eq.outcome().final_prices;
    report["payments"] = eq.outcome().payments;
    report["buyer_cost"] = eq.outcome().TotalPayments();
    report["welfare"] = eq.outcome().welfare;
    report["node_count"] = eq.node_count();
  } else {
    const DescOrdering ordering = OrderingFor(setup.instance, opts);
    const Money h = opts.initial_price >= 0
                        ? opts.initial_price
                        : DefaultInitialPrice(setup.instance);
    const DescEquilibrium eq = SolveDescendingExact(
        setup.instance, setup.tie_break, ordering, h, budget);
    AddMetadata(report, setup, std::nullopt, ordering.name());
    report["format"] = "descending";
    report["h"] = h;
    report["spe_winners"] = SubsetToJson(eq.outcome().winners);
    report["spe_prices"] = eq.outcome().final_prices;
    report["payments"] = eq.outcome().payments;
    report["buyer_cost"] = eq.outcome().TotalPayments();
    report["welfare"] = eq.outcome().welfare;
    report["node_count"] = eq.node_count();
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;
  report["runtime_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  EmitReport(report, opts.out_path);
  return kExitOk;
}

int CmdVerify(const std::string& format, const CommonOptions& opts) {
  const LoadedSetup setup = LoadSetup(opts);
  const std::uint64_t budget = WorkBudgetFromEnv();
  json report;
  if (format == "nyb") {
    const NybOrder order = OrderFor(setup.instance, opts);
    const Money cap =
        opts.bid_cap >= 0 ? opts.bid_cap : DefaultBidCap(setup.instance);
    const NybProfile profile = opts.strategies == "canonical"
                                   ? CanonicalNybProfile()
                                   : LoadNybProfileFile(opts.strategies);
    const std::optional<NybDeviation> deviation = VerifyNybSpe(
        setup.instance, setup.tie_break, order, profile, cap, budget);
    AddMetadata(report, setup, order.name(), std::nullopt);
    report["format"] = "nyb";
    report["strategies"] = profile.name;
    report["bid_cap"] = cap;
    if (deviation.has_value()) {
      report["result"] = "witness";
      report["witness"] = {{"bids", deviation->bids},
                           {"approached", deviation->approached},
                           {"seller", deviation->seller},
                           {"profile_bid", deviation->profile_bid},
                           {"better_bid", deviation->better_bid},
                           {"gain", deviation->gain}};
    } else {
      report["result"] = "pass";
    }
  } else {
    const DescOrdering ordering = OrderingFor(setup.instance, opts);
    const Money h = opts.initial_price >= 0
                        ? opts.initial_price
                        : DefaultInitialPrice(setup.instance);
    const DescProfile profile = opts.strategies == "canonical"
                                    ? CanonicalDescProfile()
                                    : LoadDescProfileFile(opts.strategies);
    const std::optional<DescDeviation> deviation = VerifyDescendingSpe(
        setup.instance, setup.tie_break, ordering, profile, h, budget);
    AddMetadata(report, setup, std::nullopt, ordering.name());
    report["format"] = "descending";
    report["strategies"] = profile.name;
    report["h"] = h;
    if (deviation.has_value()) {
      report["result"] = "witness";
      report["witness"] = {
          {"prices", deviation->state.prices},
          {"frozen", SubsetToJson(deviation->state.frozen)},
          {"seller", deviation->seller},
          {"profile_action", deviation->profile_action == DescAction::kAccept
                                 ? "accept"
                                 : "freeze"},
          {"better_action", deviation->better_action == DescAction::kAccept
                                ? "accept"
                                : "freeze"},
          {"gain", deviation->gain}};
    } else {
      report["result"] = "pass";
    }
  }
  EmitReport(report, opts.out_path);
  return kExitOk;
}

int CmdCheck(const CommonOptions& opts, Money gs_cap) {
  const LoadedSetup setup = LoadSetup(opts);
  const Valuation& v = setup.instance.valuation();
  json report;
  AddMetadata(report, setup, std::nullopt, std::nullopt);

  const std::optional<SubmodularityViolation> submodular = CheckSubmodular(v);
  report["submodular"] = {{"pass", !submodular.has_value()}};
  if (submodular.has_value()) {
    report["submodular"]["witness"] = {
        {"subset", SubsetToJson(submodular->subset)},
        {"superset", SubsetToJson(submodular->superset)},
        {"added", submodular->added}};
  }

  const AnonymityResult anonymous = CheckAnonymous(v);
  report["anonymous"] = {{"pass", anonymous.anonymous}};
  if (anonymous.anonymous) {
    report["anonymous"]["value_by_size"] = anonymous.value_by_size;
    const ConcavityResult concavity = CheckConcaveAnonymous(v);
    report["concave"] = {{"pass", concavity.concave},
                         {"marginal_by_size", concavity.marginal_by_size}};
    if (!concavity.concave) {
      report["concave"]["first_increasing_size"] =
          *concavity.first_increasing_size;
    }
  } else {
    report["anonymous"]["witness"] = {
        {"first", SubsetToJson(anonymous.witness->first)},
        {"second", SubsetToJson(anonymous.witness->second)}};
    report["concave"] = nullptr;  // undefined for non-anonymous valuations
  }

  // Clamp the requested cap to the largest grid that fits the budget.
  const Money requested = gs_cap >= 0 ? gs_cap : v.MaxValue();
  const std::optional<Money> feasible =
      LargestFeasibleGsCap(v.num_sellers(), requested);
  if (!feasible.has_value()) {
    throw TooLargeError("gross-substitutes grid is infeasible even at cap 0");
  }
  const std::optional<GrossSubstitutesViolation> gs =
      CheckGrossSubstitutes(v, *feasible);
  report["gross_substitutes"] = {{"pass", !gs.has_value()},
                                 {"cap_requested", requested},
                                 {"cap_checked", *feasible},
                                 {"complete", *feasible == requested}};
  if (gs.has_value()) {
    report["gross_substitutes"]["witness"] = {
        {"prices_low", gs->low},
        {"prices_high", gs->high},
        {"demanded_at_low", SubsetToJson(gs->demanded_at_low)}};
  }
  EmitReport(report, opts.out_path);
  return kExitOk;
}

int CmdExperiment(const std::string& name, int n, std::uint64_t seed) {
  const std::uint64_t budget = WorkBudgetFromEnv();
  ExperimentReport report;
  if (name == "chopsticks") {
    report = RunChopsticksExperiment();
  } else if (name == "cost-gap") {
    report = RunCostGapExperiment(n, budget);
  } else if (name == "concave-threshold") {
    report = RunConcaveThresholdExperiment(budget);
  } else {
    throw ParseError("unknown experiment name: " + name);
  }
  report.data["seed"] = seed;
  std::cerr << report.summary;
  std::cout << CanonicalDump(report.data);
  return kExitOk;
}

int CmdGenRandom(const RandomInstanceSpec& spec, const std::string& out_path) {
  Instance instance = GenerateRandomInstance(spec);
  const std::string text = SerializeInstance(instance, "max-card-lex");
  std::cout << text;
  if (!out_path.empty()) WriteFileOrThrow(out_path, text);
  return kExitOk;
}

}  // namespace

std::uint64_t WorkBudgetFromEnv() {
  const char* raw = std::getenv("BAFO_WORK_BUDGET");
  if (raw == nullptr || *raw == '\0') return kDefaultWorkBudget;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || value == 0) {
    throw ParseError("invalid BAFO_WORK_BUDGET: " + std::string(raw));
  }
  return value;
}

int RunCli(int argc, char** argv) {
  CLI::App app{"procurement auctions with best-and-final offers"};
  // --h is the descending-auction starting price, so help is --help only.
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  int exit_code = kExitOk;

  CommonOptions opts;
  std::string format;
  Money gs_cap = -1;
  std::string experiment_name;
  int experiment_n = 4;
  std::uint64_t seed = 0;
  RandomInstanceSpec random_spec;
  std::string random_out;

  const auto add_format = [&](CLI::App* cmd) {
    cmd->set_help_flag("--help", "print help");
    cmd->add_option("format", format, "auction format")
        ->required()
        ->check(CLI::IsMember({"nyb", "descending"}));
    cmd->add_option("instance", opts.instance_path, "instance JSON file")
        ->required();
    cmd->add_option("--tiebreak", opts.tie_break_override,
                    "tie-break rule (max-card-lex | lex-mask)");
    cmd->add_option("--order", opts.order_spec,
                    "approach order for nyb, e.g. 1,2,0");
    cmd->add_option("--ordering", opts.ordering_spec,
                    "seller ordering for descending (lowest-index | "
                    "priority:ids)");
    cmd->add_option("--bid-cap", opts.bid_cap, "bid grid cap for nyb");
    cmd->add_option("--h", opts.initial_price,
                    "starting price for descending");
    cmd->add_option("--out", opts.out_path, "also write the report here");
  };

  CLI::App* run = app.add_subcommand("run", "play an auction and print the transcript");
  add_format(run);
  run->add_option("--strategies", opts.strategies,
                  "canonical or a strategy JSON file");
  run->callback([&] { exit_code = CmdRun(format, opts); });

  CLI::App* solve =
      app.add_subcommand("solve", "compute the exact subgame perfect equilibrium");
  add_format(solve);
  solve->callback([&] { exit_code = CmdSolve(format, opts); });

  CLI::App* verify =
      app.add_subcommand("verify", "check a strategy profile for subgame perfection");
  add_format(verify);
  verify->add_option("--strategies", opts.strategies,
                     "canonical or a strategy JSON file");
  verify->callback([&] { exit_code = CmdVerify(format, opts); });

  CLI::App* check =
      app.add_subcommand("check", "report valuation-class properties");
  check->add_option("instance", opts.instance_path, "instance JSON file")
      ->required();
  check->add_option("--tiebreak", opts.tie_break_override, "tie-break rule");
  check->add_option("--gs-cap", gs_cap,
                    "price cap for the gross-substitutes grid");
  check->add_option("--out", opts.out_path, "also write the report here");
  check->callback([&] { exit_code = CmdCheck(opts, gs_cap); });

  CLI::App* experiment = app.add_subcommand(
      "experiment", "run a bundled experiment and report its checks");
  experiment->add_option("name", experiment_name,
                         "chopsticks | cost-gap | concave-threshold")
      ->required();
  experiment->add_option("--n", experiment_n, "sellers for cost-gap");
  experiment->add_option("--seed", seed, "seed recorded in the report");
  experiment->callback(
      [&] { exit_code = CmdExperiment(experiment_name, experiment_n, seed); });

  CLI::App* gen = app.add_subcommand("gen-random", "generate a random instance");
  gen->add_option("--seed", random_spec.seed, "random seed")->required();
  gen->add_option("--n", random_spec.num_sellers, "number of sellers")
      ->required();
  gen->add_option("--max-value", random_spec.max_value,
                  "upper bound for valuation entries")
      ->required();
  gen->add_option("--max-cost", random_spec.max_cost,
                  "upper bound for seller costs")
      ->required();
  gen->add_option("--kind", random_spec.kind,
                  "explicit | anonymous | additive");
  gen->add_flag("--monotone", random_spec.monotone,
                "repair explicit valuations to be monotone");
  gen->add_option("--out", random_out, "also write the instance here");
  gen->callback([&] { exit_code = CmdGenRandom(random_spec, random_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const TooLargeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "hint: BAFO_WORK_BUDGET raises the solver work budget\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}

}  // namespace bafo::cli
