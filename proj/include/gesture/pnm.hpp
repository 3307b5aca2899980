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

#ifndef GESTURE_PNM_HPP
#define GESTURE_PNM_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "gesture/image.hpp"

namespace gesture::pnm {

// Binary netpbm: P5 for 1-channel, P6 for 3-channel, maxval 255 only.
// Header is written as "P5\n<w> <h>\n255\n" with exactly one whitespace byte
// before the raster.

std::vector<std::uint8_t> encode(const ImageBuffer &img);
ImageBuffer decode(std::span<const std::uint8_t> bytes);

ImageBuffer read(const std::filesystem::path &path);
void write(const std::filesystem::path &path, const ImageBuffer &img);

} // namespace gesture::pnm

#endif
