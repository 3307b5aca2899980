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

#include "gesture/error.hpp"

namespace gesture {

const char *to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidInput:
        return "invalid input";
    case ErrorKind::EmptyRegion:
        return "empty region";
    case ErrorKind::LostTrack:
        return "lost track";
    case ErrorKind::Format:
        return "format error";
    case ErrorKind::Numeric:
        return "numeric error";
    case ErrorKind::Io:
        return "I/O error";
    case ErrorKind::Unsupported:
        return "unsupported configuration";
    case ErrorKind::DegenerateFusion:
        return "degenerate fusion";
    }
    return "unknown error";
}

} // namespace gesture
