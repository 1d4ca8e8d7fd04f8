// Copyright 2026 The mcsterm Authors
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

#ifndef MCSTERM_TOOLS_CLI_HPP_
#define MCSTERM_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace mcsterm::tools {

enum ExitCode : int {
  kExitOk = 0,          // terminating / valid
  kExitNegative = 1,    // non-terminating / invalid
  kExitUsage = 2,       // usage or input error
  kExitResource = 3,    // budget exceeded
  kExitInternal = 4,    // disagreement or internal error
};

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace mcsterm::tools

#endif  // MCSTERM_TOOLS_CLI_HPP_
