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

#include "instance_io.h"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>
#include <vector>

namespace bafo::cli {
namespace {

using nlohmann::json;

std::int64_t RequireInt(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw ParseError("missing or non-integer field: " + key);
  }
  return j[key].get<std::int64_t>();
}

std::vector<std::int64_t> RequireIntArray(const json& j,
                                          const std::string& key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw ParseError("missing or non-array field: " + key);
  }
  std::vector<std::int64_t> out;
  for (const auto& item : j[key]) {
    if (!item.is_number_integer()) {
      throw ParseError("non-integer entry in " + key);
    }
    out.push_back(item.get<std::int64_t>());
  }
  return out;
}

json SubsetToJson(SellerSubset subset) {
  json arr = json::array();
  for (SellerId i : subset.Members()) arr.push_back(i);
  return arr;
}

}  // namespace

std::string CanonicalDump(const json& value) { return value.dump(2) + "\n"; }

std::string ReadFileOrThrow(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFileOrThrow(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << contents;
}

ParsedInstance ParseInstanceText(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("instance file must be a JSON object");

  const std::int64_t version = RequireInt(j, "version");
  if (version != kFileFormatVersion) {
    throw ParseError("unsupported file version " + std::to_string(version));
  }
  const std::int64_t n = RequireInt(j, "n");
  if (n < 1) throw ParseError("n must be at least 1");
  if (n > kMaxSellers) {
    throw ParseError("n=" + std::to_string(n) + " exceeds the supported cap " +
                     std::to_string(kMaxSellers));
  }

  const std::vector<std::int64_t> costs = RequireIntArray(j, "costs");
  if (costs.size() != static_cast<std::size_t>(n)) {
    throw ParseError("costs must have exactly n entries");
  }
  for (std::int64_t c : costs) {
    if (c < 0) throw ParseError("costs must be non-negative");
  }

  if (!j.contains("valuation") || !j["valuation"].is_object()) {
    throw ParseError("missing valuation object");
  }
  const json& val = j["valuation"];
  if (!val.contains("kind") || !val["kind"].is_string()) {
    throw ParseError("valuation.kind must be a string");
  }
  const std::string kind = val["kind"].get<std::string>();
  const std::vector<std::int64_t> values = RequireIntArray(val, "values");
  for (std::int64_t v : values) {
    if (v < 0) throw ParseError("valuation values must be non-negative");
  }

  std::size_t expected = 0;
  if (kind == "explicit") {
    expected = std::size_t{1} << n;
  } else if (kind == "anonymous") {
    expected = static_cast<std::size_t>(n) + 1;
  } else if (kind == "additive") {
    expected = static_cast<std::size_t>(n);
  } else {
    throw ParseError("unknown valuation kind: " + kind);
  }
  if (values.size() != expected) {
    throw ParseError("valuation kind '" + kind + "' for n=" +
                     std::to_string(n) + " needs " + std::to_string(expected) +
                     " values, got " + std::to_string(values.size()));
  }
  if (kind != "additive" && values[0] != 0) {
    throw ParseError("value of the empty set must be 0");
  }

  std::string tie_break = "max-card-lex";
  if (j.contains("tiebreak")) {
    if (!j["tiebreak"].is_string()) {
      throw ParseError("tiebreak must be a string");
    }
    tie_break = j["tiebreak"].get<std::string>();
  }
  TieBreakRule::FromName(tie_break);  // validates the name

  std::string denomination = "units";
  if (j.contains("denomination")) {
    if (!j["denomination"].is_string()) {
      throw ParseError("denomination must be a string");
    }
    denomination = j["denomination"].get<std::string>();
  }

  try {
    Valuation valuation =
        kind == "explicit"
            ? Valuation::Explicit(static_cast<int>(n), values)
            : (kind == "anonymous"
                   ? Valuation::Anonymous(static_cast<int>(n), values)
                   : Valuation::Additive(values));
    return ParsedInstance{
        Instance(PriceVector(costs.begin(), costs.end()),
                 std::move(valuation), denomination),
        tie_break};
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

ParsedInstance LoadInstanceFile(const std::string& path) {
  return ParseInstanceText(ReadFileOrThrow(path));
}

std::string SerializeInstance(const Instance& instance,
                              const std::string& tie_break_name) {
  json j;
  j["version"] = kFileFormatVersion;
  j["n"] = instance.num_sellers();
  j["costs"] = instance.costs();
  json val;
  switch (instance.valuation().kind()) {
    case ValuationKind::kExplicit:
      val["kind"] = "explicit";
      break;
    case ValuationKind::kAnonymous:
      val["kind"] = "anonymous";
      break;
    case ValuationKind::kAdditive:
      val["kind"] = "additive";
      break;
  }
  val["values"] = instance.valuation().table();
  j["valuation"] = val;
  j["tiebreak"] = tie_break_name;
  j["denomination"] = instance.denomination();
  return CanonicalDump(j);
}

std::string InstanceHashHex(const Instance& instance,
                            const std::string& tie_break_name) {
  const std::string canonical = SerializeInstance(instance, tie_break_name);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string hex(16, '0');
  for (int i = 15; i >= 0; --i) {
    hex[i] = digits[h & 0xf];
    h >>= 4;
  }
  return hex;
}

namespace {

std::string ProfileKind(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed strategy file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw ParseError("strategy file needs a string 'kind' field");
  }
  return j["kind"].get<std::string>();
}

Money ProfileBidField(const std::string& text) {
  const json j = json::parse(text);
  if (!j.contains("bid") || !j["bid"].is_number_integer()) {
    throw ParseError("constant-bid strategy needs an integer 'bid' field");
  }
  const Money bid = j["bid"].get<Money>();
  if (bid < 0) throw ParseError("bid must be non-negative");
  return bid;
}

}  // namespace

NybProfile ParseNybProfileText(const std::string& text) {
  const std::string kind = ProfileKind(text);
  if (kind == "canonical") return CanonicalNybProfile();
  if (kind == "constant-bid") return ConstantBidProfile(ProfileBidField(text));
  if (kind == "cost-bid") return CostBidProfile();
  throw ParseError("unknown strategy kind for a bid auction: " + kind);
}

DescProfile ParseDescProfileText(const std::string& text) {
  const std::string kind = ProfileKind(text);
  if (kind == "canonical") return CanonicalDescProfile();
  if (kind == "always-accept") return AlwaysAcceptProfile();
  if (kind == "always-freeze") return AlwaysFreezeProfile();
  throw ParseError("unknown strategy kind for a descending auction: " + kind);
}

NybProfile LoadNybProfileFile(const std::string& path) {
  return ParseNybProfileText(ReadFileOrThrow(path));
}

DescProfile LoadDescProfileFile(const std::string& path) {
  return ParseDescProfileText(ReadFileOrThrow(path));
}

json OutcomeToJson(const AuctionOutcome& outcome) {
  json j;
  j["winners"] = SubsetToJson(outcome.winners);
  j["final_prices"] = outcome.final_prices;
  j["payments"] = outcome.payments;
  j["buyer_utility"] = outcome.buyer_utility;
  j["seller_utilities"] = outcome.seller_utilities;
  j["welfare"] = outcome.welfare;
  j["buyer_cost"] = outcome.TotalPayments();
  return j;
}

bool OutcomeMatchesJson(const AuctionOutcome& outcome,
                        const nlohmann::json& outcome_json) {
  return OutcomeToJson(outcome) == outcome_json;
}

json NybTranscriptJson(const Instance& instance,
                       const std::string& tie_break_name,
                       const std::vector<SellerId>& approach_order,
                       const std::string& strategies,
                       const NybRunResult& run) {
  json j;
  j["version"] = kFileFormatVersion;
  j["format"] = "nyb";
  j["instance_hash"] = InstanceHashHex(instance, tie_break_name);
  j["tiebreak"] = tie_break_name;
  j["order"] = approach_order;
  j["bid_cap"] = run.bid_cap;
  j["strategies"] = strategies;
  json events = json::array();
  for (const NybEvent& e : run.events) {
    events.push_back({{"step", e.step}, {"seller", e.seller}, {"bid", e.bid}});
  }
  j["events"] = events;
  j["outcome"] = OutcomeToJson(run.outcome);
  return j;
}

json DescTranscriptJson(const Instance& instance,
                        const std::string& tie_break_name,
                        const std::string& ordering_name,
                        const std::string& strategies,
                        const DescRunResult& run) {
  json j;
  j["version"] = kFileFormatVersion;
  j["format"] = "descending";
  j["instance_hash"] = InstanceHashHex(instance, tie_break_name);
  j["tiebreak"] = tie_break_name;
  j["ordering"] = ordering_name;
  j["h"] = run.initial_price;
  j["strategies"] = strategies;
  json events = json::array();
  for (const DescEvent& e : run.events) {
    const char* action = e.auto_freeze
                             ? "auto-freeze"
                             : (e.action == DescAction::kAccept ? "accept"
                                                                : "freeze");
    events.push_back({{"step", e.step},
                      {"seller", e.seller},
                      {"action", action},
                      {"price_after", e.price_after}});
  }
  j["events"] = events;
  j["outcome"] = OutcomeToJson(run.outcome);
  return j;
}

AuctionOutcome ReplayNybTranscript(const Instance& instance,
                                   const TieBreakRule& tie_break,
                                   const json& transcript) {
  const int n = instance.num_sellers();
  if (!transcript.contains("events") || !transcript["events"].is_array() ||
      transcript["events"].size() != static_cast<std::size_t>(n)) {
    throw ParseError("transcript needs exactly n bid events");
  }
  PriceVector bids(instance.costs());
  std::vector<bool> seen(n, false);
  for (const auto& e : transcript["events"]) {
    const int seller = static_cast<int>(RequireInt(e, "seller"));
    if (seller < 0 || seller >= n || seen[seller]) {
      throw ParseError("transcript events must bid each seller once");
    }
    seen[seller] = true;
    bids[seller] = RequireInt(e, "bid");
  }
  return Settle(instance, tie_break, bids);
}

AuctionOutcome ReplayDescTranscript(const Instance& instance,
                                    const TieBreakRule& tie_break,
                                    const json& transcript) {
  if (!transcript.contains("h")) throw ParseError("transcript needs h");
  DescState state =
      InitialDescState(instance.num_sellers(), RequireInt(transcript, "h"));
  for (const auto& e : transcript["events"]) {
    const int seller = static_cast<int>(RequireInt(e, "seller"));
    const std::string action = e.value("action", "");
    if (action == "accept" || action == "auto-freeze") {
      state = Step(state, seller, DescAction::kAccept);
      const bool froze = state.frozen.Contains(seller);
      if (froze != (action == "auto-freeze")) {
        throw ParseError("transcript auto-freeze flag does not match replay");
      }
    } else if (action == "freeze") {
      state = Step(state, seller, DescAction::kFreeze);
    } else {
      throw ParseError("unknown transcript action: " + action);
    }
    if (state.prices[seller] != RequireInt(e, "price_after")) {
      throw ParseError("transcript price_after does not match replay");
    }
  }
  return MakeOutcome(
      instance, SelectWinner(instance.valuation(), state.prices, tie_break),
      state.prices);
}

}  // namespace bafo::cli
