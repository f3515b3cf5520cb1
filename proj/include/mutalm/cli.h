// Copyright 2026 The MutaLM Authors
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

#ifndef MUTALM_CLI_H_
#define MUTALM_CLI_H_

#include <ostream>

namespace mutalm::cli {

enum ExitCode {
  kExitOk = 0,
  kExitInput = 2,
  kExitPredictor = 3,
  kExitUsage = 64,
};

// Entry point of the mutalm tool: mutate, execute, simulate, compare.
int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mutalm::cli

#endif  // MUTALM_CLI_H_
