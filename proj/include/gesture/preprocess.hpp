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

#ifndef GESTURE_PREPROCESS_HPP
#define GESTURE_PREPROCESS_HPP

#include <filesystem>
#include <span>
#include <vector>

#include "gesture/image.hpp"
#include "gesture/tensor.hpp"

namespace gesture {

/// Ordered frames sharing width, height and channel count.
using GestureSequence = std::vector<ImageBuffer>;

inline constexpr std::size_t kVolumeFrames = 32;
inline constexpr int kVolumeSide = 28;
inline constexpr int kVolumeChannels = 3;

/// Source frame index for each of `target` output frames:
/// round(k * (n - 1) / (target - 1)), halves rounded up.
std::vector<std::size_t> resample_indices(std::size_t n, std::size_t target);

GestureSequence resample_temporal(const GestureSequence &seq, std::size_t target = kVolumeFrames);

/// factor x factor block mean per channel, rounded half up.
ImageBuffer downsample_spatial(const ImageBuffer &img, int factor = 2);

/// sqrt(Gx^2 + Gy^2) of the 3x3 Sobel pair with edge-replicated borders.
RealImage sobel_magnitude(const ImageBuffer &img);

/// In place (v - mean) / std with population variance; constant input
/// (std < 1e-12) becomes all zeros.
void normalize_channel(std::span<double> values);

/// (32, 28, 28, 3) volume of (intensity, Sobel magnitude, |frame - previous|),
/// each channel normalized over the whole volume. Frames must be 56x56 or
/// 28x28; colour frames are converted to gray first.
Tensor build_volume(const GestureSequence &seq);

/// Loads frame_0000.pgm, frame_0001.pgm, ... (or .ppm) from a directory in
/// ascending name order.
GestureSequence load_frame_directory(const std::filesystem::path &dir);

} // namespace gesture

#endif
