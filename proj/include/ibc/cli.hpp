/*
 Copyright 2026 The behavioral-ibc Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#pragma once

#include <iosfwd>

namespace ibc {

/// Exit codes of cli_main.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;

/**
 * @brief Entry point of the `ibc` tool.
 *
 * Subcommands: collect, rank, simulate, compare, interconnect. Returns 0 on
 * success, 1 on usage, configuration or certification errors and 2 when a
 * closed-loop signal becomes non-finite.
 */
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int cli_main(int argc, const char* const* argv);

} // namespace ibc
