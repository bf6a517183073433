// Copyright 2026 The fermiproc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver shared by the fermiproc executable and the tests.
//
//   fermiproc <subcommand> --config FILE [--seed N] [--out DIR] [--workers N]
//
// Subcommands: verify-decomp, trotter, vqe, lgt, qpe, echo, noise-budget.
// Exit codes: 0 when every check of the subcommand passes, 1 when a check
// fails or the run aborts, 2 on usage or configuration errors.

#ifndef FERMIPROC_CLI_HPP_
#define FERMIPROC_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace fermiproc {

inline constexpr int kConfigVersion = 1;

enum ExitCode { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fermiproc

#endif  // FERMIPROC_CLI_HPP_
