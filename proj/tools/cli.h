// Copyright 2026 The mip-lab Authors
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

#ifndef MIP_TOOLS_CLI_H_
#define MIP_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace mip::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

// Runs one command. `args` excludes the program name. Machine output goes to
// `out` unless a file is selected (--out or MIP_OUTPUT_DIR); human-readable
// text goes to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace mip::cli

#endif  // MIP_TOOLS_CLI_H_
