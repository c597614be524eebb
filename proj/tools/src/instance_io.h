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
// On-disk JSON formats: problem instances, strategy profiles, transcripts.
// Serialization is canonical (sorted keys, two-space indent, trailing
// newline) so that parse/serialize round-trips byte-identically and
// instance hashes are stable.

#ifndef BAFO_CLI_INSTANCE_IO_H_
#define BAFO_CLI_INSTANCE_IO_H_

#include <string>

#include "bafo/descending.h"
#include "bafo/instance.h"
#include "bafo/nyb.h"
#include "bafo/tiebreak.h"

#include "json.hpp"

namespace bafo::cli {

inline constexpr int kFileFormatVersion = 1;

struct ParsedInstance {
  Instance instance;
  std::string tie_break_name;
};

// Parses and validates an instance file; throws ParseError with a specific
// message on any defect (bad JSON, length mismatches, negative entries,
// nonzero empty-set value, n out of range, unknown tie-break).
ParsedInstance ParseInstanceText(const std::string& text);
ParsedInstance LoadInstanceFile(const std::string& path);

std::string SerializeInstance(const Instance& instance,
                              const std::string& tie_break_name);

// FNV-1a over the canonical serialization, as 16 hex digits.
std::string InstanceHashHex(const Instance& instance,
                            const std::string& tie_break_name);

// Strategy files: {"kind": "canonical" | "constant-bid" | "cost-bid" |
// "always-accept" | "always-freeze", "bid": <int, constant-bid only>}.
NybProfile ParseNybProfileText(const std::string& text);
DescProfile ParseDescProfileText(const std::string& text);
NybProfile LoadNybProfileFile(const std::string& path);
DescProfile LoadDescProfileFile(const std::string& path);

nlohmann::json OutcomeToJson(const AuctionOutcome& outcome);

nlohmann::json NybTranscriptJson(const Instance& instance,
                                 const std::string& tie_break_name,
                                 const std::vector<SellerId>& approach_order,
                                 const std::string& strategies,
                                 const NybRunResult& run);
nlohmann::json DescTranscriptJson(const Instance& instance,
                                  const std::string& tie_break_name,
                                  const std::string& ordering_name,
                                  const std::string& strategies,
                                  const DescRunResult& run);

// Replays a transcript's events through settlement / step semantics and
// returns the reconstructed outcome. Throws ParseError when the events are
// inconsistent with the recorded prices or flags.
AuctionOutcome ReplayNybTranscript(const Instance& instance,
                                   const TieBreakRule& tie_break,
                                   const nlohmann::json& transcript);
AuctionOutcome ReplayDescTranscript(const Instance& instance,
                                    const TieBreakRule& tie_break,
                                    const nlohmann::json& transcript);

// True when the two outcome descriptions agree field for field.
bool OutcomeMatchesJson(const AuctionOutcome& outcome,
                        const nlohmann::json& outcome_json);

std::string CanonicalDump(const nlohmann::json& value);

std::string ReadFileOrThrow(const std::string& path);
void WriteFileOrThrow(const std::string& path, const std::string& contents);

}  // namespace bafo::cli

#endif  // BAFO_CLI_INSTANCE_IO_H_
