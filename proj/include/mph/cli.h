// Copyright 2026 The MPH Authors.
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


#ifndef MPH_CLI_H_
#define MPH_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "mph/error.h"

namespace mph {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitVerification = 4;

int ExitCodeFor(ErrorCode code);

// Runs one invocation of the mph tool; args excludes the program name.
// Reports go to out (or to the -o path), diagnostics to err.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace mph

#endif  // MPH_CLI_H_
