// Copyright 2026 The symdp Authors
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

#ifndef SYMDP_CLI_H_
#define SYMDP_CLI_H_

#include <ostream>

namespace symdp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerificationFailed = 2;
inline constexpr int kExitInfeasible = 3;

// Entry point of the symdp command. Subcommands: privatize, build-chain,
// experiment, verify, export-mnfa. Normal output goes to `out`,
// diagnostics to `err`.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace symdp

#endif  // SYMDP_CLI_H_
