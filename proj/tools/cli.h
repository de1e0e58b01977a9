// Copyright 2026 The predgame Authors
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

#ifndef PREDGAME_TOOLS_CLI_H_
#define PREDGAME_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace predgame::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitInput = 3,
  kExitResource = 4,
  kExitUnsupported = 5,
  // verify found a profitable deviation.
  kExitViolated = 7,
};

// Runs one command. `args` excludes the program name. Short results go to
// `out`, diagnostics to `err`; artifacts are written under --out.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace predgame::cli

#endif  // PREDGAME_TOOLS_CLI_H_
