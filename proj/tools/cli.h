// Copyright 2026 The embsim Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EMBSIM_TOOLS_CLI_H_
#define EMBSIM_TOOLS_CLI_H_

#include <iosfwd>

namespace embsim::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNumericalError = 2;

// Runs `embsim <subcommand> ...`. Reports go to `out` (or --out files),
// diagnostics and human-readable summaries to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace embsim::cli

#endif  // EMBSIM_TOOLS_CLI_H_
