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

#include <string>

#include "doctest.h"
#include "instance_io.h"
#include "random_gen.h"
#include "test_util.h"

namespace bafo::cli {
namespace {

const TieBreakRule kTau = TieBreakRule::MaxCardThenLexMask();

std::string ChopJson() {
  return R"({
  "version": 1,
  "n": 3,
  "costs": [50, 10, 10],
  "valuation": {"kind": "explicit", "values": [0, 100, 0, 100, 0, 100, 100, 100]},
  "tiebreak": "max-card-lex",
  "denomination": "cents"
})";
}

TEST_CASE("instance files parse and validate") {
  const ParsedInstance parsed = ParseInstanceText(ChopJson());
  CHECK(parsed.instance.costs() == PriceVector{50, 10, 10});
  CHECK(parsed.instance.valuation().Value(SellerSubset::FromIds({1, 2})) ==
        100);
  CHECK(parsed.tie_break_name == "max-card-lex");
  CHECK(parsed.instance.denomination() == "cents");

  const ParsedInstance gap = ParseInstanceText(R"({
    "version": 1, "n": 4, "costs": [0,0,0,0],
    "valuation": {"kind": "anonymous", "values": [0,2,4,4,6]}
  })");
  CHECK(gap.instance.valuation().Value(SellerSubset::All(4)) == 6);
  CHECK(gap.tie_break_name == "max-card-lex");  // default
}

TEST_CASE("instance file defects raise parse errors") {
  CHECK_THROWS_AS(ParseInstanceText("not json"), ParseError);
  CHECK_THROWS_AS(ParseInstanceText(R"({"version": 2, "n": 1, "costs": [0],
    "valuation": {"kind": "additive", "values": [1]}})"),
                  ParseError);
  // Seven explicit values for three sellers.
  CHECK_THROWS_AS(ParseInstanceText(R"({"version": 1, "n": 3,
    "costs": [1,1,1],
    "valuation": {"kind": "explicit", "values": [0,1,2,3,4,5,6]}})"),
                  ParseError);
  CHECK_THROWS_AS(ParseInstanceText(R"({"version": 1, "n": 2, "costs": [1,-1],
    "valuation": {"kind": "additive", "values": [1,1]}})"),
                  ParseError);
  CHECK_THROWS_AS(ParseInstanceText(R"({"version": 1, "n": 2, "costs": [1,1],
    "valuation": {"kind": "explicit", "values": [5,0,0,0]}})"),
                  ParseError);
  CHECK_THROWS_AS(ParseInstanceText(R"({"version": 1, "n": 21,
    "costs": [], "valuation": {"kind": "additive", "values": []}})"),
                  ParseError);
  CHECK_THROWS_AS(ParseInstanceText(R"({"version": 1, "n": 2, "costs": [1,1],
    "valuation": {"kind": "mystery", "values": [0,0,0]}})"),
                  ParseError);
  CHECK_THROWS_AS(ParseInstanceText(R"({"version": 1, "n": 2, "costs": [1,1],
    "valuation": {"kind": "additive", "values": [1,1]},
    "tiebreak": "coin-flip"})"),
                  ParseError);
  CHECK_THROWS_AS(LoadInstanceFile("/nonexistent/instance.json"), ParseError);
}

TEST_CASE("serialization round-trips byte for byte") {
  const Instance chop = test::Chop();
  const std::string first = SerializeInstance(chop, "max-card-lex");
  const ParsedInstance reparsed = ParseInstanceText(first);
  CHECK(SerializeInstance(reparsed.instance, reparsed.tie_break_name) ==
        first);

  const std::string hash = InstanceHashHex(chop, "max-card-lex");
  CHECK(hash.size() == 16);
  CHECK(hash == InstanceHashHex(test::Chop(), "max-card-lex"));
  CHECK(hash != InstanceHashHex(test::DimeChop(), "max-card-lex"));
}

TEST_CASE("strategy files") {
  CHECK(ParseNybProfileText(R"({"kind": "canonical"})").name == "canonical");
  CHECK(ParseNybProfileText(R"({"kind": "constant-bid", "bid": 95})").name ==
        "constant-bid:95");
  CHECK(ParseNybProfileText(R"({"kind": "cost-bid"})").name == "cost-bid");
  CHECK(ParseDescProfileText(R"({"kind": "always-accept"})").name ==
        "always-accept");
  CHECK(ParseDescProfileText(R"({"kind": "always-freeze"})").name ==
        "always-freeze");
  CHECK_THROWS_AS(ParseNybProfileText("{"), ParseError);
  CHECK_THROWS_AS(ParseNybProfileText(R"({"kind": "always-accept"})"),
                  ParseError);
  CHECK_THROWS_AS(ParseNybProfileText(R"({"kind": "constant-bid"})"),
                  ParseError);
  CHECK_THROWS_AS(ParseDescProfileText(R"({"kind": "cost-bid"})"), ParseError);
}

TEST_CASE("bid transcripts replay to the reported outcome") {
  const Instance chop = test::Chop();
  const NybOrder order = NybOrder::Fixed({1, 2, 0});
  const NybRunResult run = RunCanonical(chop, kTau, order, 100);
  const nlohmann::json transcript =
      NybTranscriptJson(chop, "max-card-lex", {1, 2, 0}, "canonical", run);
  const AuctionOutcome replayed = ReplayNybTranscript(chop, kTau, transcript);
  CHECK(OutcomeMatchesJson(replayed, transcript["outcome"]));

  nlohmann::json broken = transcript;
  broken["events"].erase(2);
  CHECK_THROWS_AS(ReplayNybTranscript(chop, kTau, broken), ParseError);
}

TEST_CASE("descending transcripts replay to the reported outcome") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = test::RandomTinyInstance(seed);
    const Money h = std::max<Money>(inst.MaxCost(), 1) + 1;
    const DescRunResult run = RunDescending(
        inst, kTau, DescOrdering::LowestEligibleIndex(),
        CanonicalDescProfile(), h);
    const nlohmann::json transcript = DescTranscriptJson(
        inst, "max-card-lex", "lowest-index", "canonical", run);
    const AuctionOutcome replayed =
        ReplayDescTranscript(inst, kTau, transcript);
    CHECK(OutcomeMatchesJson(replayed, transcript["outcome"]));
  }

  // Auto-freeze flags are checked during replay.
  const Instance gap = test::Gap4();
  const DescRunResult run = RunDescending(
      gap, kTau, DescOrdering::LowestEligibleIndex(), CanonicalDescProfile(),
      2);
  nlohmann::json transcript =
      DescTranscriptJson(gap, "max-card-lex", "lowest-index", "canonical", run);
  for (auto& event : transcript["events"]) {
    if (event["action"] == "auto-freeze") {
      event["action"] = "accept";
      CHECK_THROWS_AS(ReplayDescTranscript(gap, kTau, transcript), ParseError);
      return;
    }
  }
  FAIL("expected an auto-freeze event in the transcript");
}

TEST_CASE("random instances are deterministic and bounded") {
  const RandomInstanceSpec spec{1, 3, 8, 6, "explicit", false};
  const Instance a = GenerateRandomInstance(spec);
  const Instance b = GenerateRandomInstance(spec);
  CHECK(SerializeInstance(a, "max-card-lex") ==
        SerializeInstance(b, "max-card-lex"));
  for (std::int64_t value : a.valuation().table()) {
    CHECK(value >= 0);
    CHECK(value <= 8);
  }
  for (Money c : a.costs()) {
    CHECK(c >= 0);
    CHECK(c <= 6);
  }

  const Instance monotone = GenerateRandomInstance({7, 3, 8, 6, "explicit",
                                                    true});
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    for (int i = 0; i < 3; ++i) {
      if (mask & (1u << i)) {
        CHECK(monotone.valuation().Value(SellerSubset(mask)) >=
              monotone.valuation().Value(SellerSubset(mask).Without(i)));
      }
    }
  }

  CHECK_THROWS_AS(GenerateRandomInstance({1, 0, 8, 6, "explicit", false}),
                  std::invalid_argument);
  CHECK_THROWS_AS(GenerateRandomInstance({1, 3, 8, 6, "mystery", false}),
                  std::invalid_argument);
}

}  // namespace
}  // namespace bafo::cli
