// Copyright 2026 The rmtsim Authors
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

#ifndef RMTSIM_CLI_H_
#define RMTSIM_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace rmtsim {

// Process exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

// Environment variable holding a colon-separated ALU search path, searched
// after any --alu-dir flags.
inline constexpr char kAluPathEnv[] = "RMTSIM_ALU_PATH";

// Runs the command line `args` (without the program name) and returns the
// exit code. Subcommands: gen, sim, fuzz, bench.
int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err);

}  // namespace rmtsim

#endif  // RMTSIM_CLI_H_
