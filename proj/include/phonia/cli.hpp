// Copyright 2026 The phonia authors
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

#ifndef PHONIA_CLI_HPP_
#define PHONIA_CLI_HPP_

#include <string>
#include <vector>

namespace phonia {

// Exit codes: 0 success, 2 validation error, 3 data error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitData = 3;

// Entry point behind the binary; takes argv-style arguments without the
// program name. Exposed so tests can drive subcommands in-process.
int run_cli(const std::vector<std::string>& args);

}  // namespace phonia

#endif  // PHONIA_CLI_HPP_
