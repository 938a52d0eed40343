// Copyright 2026 The photothin Authors
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

#ifndef PHOTOTHIN_CLI_COMMANDS_H_
#define PHOTOTHIN_CLI_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace photothin::cli {

// Exit codes, stable for scripting.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

// Runs the command line `args` (args[0] is the program name). JSON reports go
// to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace photothin::cli

#endif  // PHOTOTHIN_CLI_COMMANDS_H_
