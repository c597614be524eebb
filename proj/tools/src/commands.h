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

#ifndef BAFO_CLI_COMMANDS_H_
#define BAFO_CLI_COMMANDS_H_

#include <cstdint>

namespace bafo::cli {

// Exit codes: 0 success, 2 malformed input (files, arguments), 3 work-budget
// or enumeration-bound exceeded.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitBudget = 3;

// Work budget for solvers: BAFO_WORK_BUDGET from the environment when set,
// otherwise the library default. Throws ParseError on a malformed value.
std::uint64_t WorkBudgetFromEnv();

// Full command-line entry point.
int RunCli(int argc, char** argv);

}  // namespace bafo::cli

#endif  // BAFO_CLI_COMMANDS_H_
