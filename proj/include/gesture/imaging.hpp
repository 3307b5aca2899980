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

#ifndef GESTURE_IMAGING_HPP
#define GESTURE_IMAGING_HPP

#include <cstdint>
#include <vector>

#include "gesture/image.hpp"

namespace gesture {

/// A BinaryMask is a 1-channel ImageBuffer whose values are exactly
/// {0, max_value}; 255 marks foreground throughout the library.
using BinaryMask = ImageBuffer;

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
};

/// Unweighted channel mean, rounded half up.
ImageBuffer grayscale(const ImageBuffer &src);

/// dst = max_value where src > threshold (strict), else 0.
BinaryMask threshold_binary(const ImageBuffer &src, std::uint8_t threshold,
                            std::uint8_t max_value = 255);

/// Per-channel |frame - key|, averaged to gray, then thresholded. Pixels far
/// from the key color come out 255.
BinaryMask color_distance_mask(const ImageBuffer &frame, Rgb key_color, std::uint8_t threshold);

/// Keeps frame pixels where mask is nonzero and takes new_bg elsewhere.
ImageBuffer replace_background(const ImageBuffer &frame, const ImageBuffer &new_bg,
                               const BinaryMask &mask);

/// Thresholded absolute difference of two grayscale frames; 255 marks motion.
BinaryMask frame_difference(const ImageBuffer &frame_t, const ImageBuffer &frame_prev,
                            std::uint8_t threshold);

/// 255 <-> 0.
BinaryMask invert_mask(const BinaryMask &mask);

std::size_t count_nonzero(const ImageBuffer &img);

/// Convex hull of all nonzero pixel coordinates (monotone chain). Vertices are
/// counter-clockwise with y treated as the second axis, start at the smallest
/// (x, y), and exclude collinear points. Throws EmptyRegion on an empty mask.
std::vector<Point> convex_hull(const BinaryMask &mask);

/// Hull of an arbitrary point set, same ordering rules as above.
std::vector<Point> convex_hull(std::vector<Point> points);

} // namespace gesture

#endif
