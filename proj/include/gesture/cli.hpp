/*
 *   Copyright 2026 The Gesture Toolkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GESTURE_CLI_HPP
#define GESTURE_CLI_HPP

#include <ostream>

namespace gesture {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFormat = 3;
inline constexpr int kExitNumeric = 4;

/// Runs `gesture <segment|track|train|classify|vae> [flags]`. Results go to
/// `out` (JSON lines, tables), diagnostics to `err`. Every command validates
/// its inputs before writing any file.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace gesture

#endif
