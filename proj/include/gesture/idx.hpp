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

#ifndef GESTURE_IDX_HPP
#define GESTURE_IDX_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "gesture/image.hpp"

namespace gesture {

/// N 28x28 grayscale digit images with labels 0-9.
struct DigitDataset {
    std::vector<ImageBuffer> images;
    std::vector<int> labels;

    std::size_t size() const noexcept { return images.size(); }
};

namespace idx {

inline constexpr std::uint32_t kImageMagic = 0x00000803;
inline constexpr std::uint32_t kLabelMagic = 0x00000801;
inline constexpr int kSide = 28;

std::vector<ImageBuffer> decode_images(std::span<const std::uint8_t> bytes);
std::vector<int> decode_labels(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_images(const std::vector<ImageBuffer> &images);
std::vector<std::uint8_t> encode_labels(const std::vector<int> &labels);

DigitDataset load(const std::filesystem::path &images_path,
                  const std::filesystem::path &labels_path);
std::vector<ImageBuffer> load_images(const std::filesystem::path &images_path);
void save(const DigitDataset &data, const std::filesystem::path &images_path,
          const std::filesystem::path &labels_path);

} // namespace idx

/// Loads an image/label file pair and checks that the counts agree.
inline DigitDataset load_idx(const std::filesystem::path &images_path,
                             const std::filesystem::path &labels_path) {
    return idx::load(images_path, labels_path);
}

} // namespace gesture

#endif
