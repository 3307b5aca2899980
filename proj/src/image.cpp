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

#include "gesture/image.hpp"

#include <algorithm>
#include <string>

#include "gesture/error.hpp"

namespace gesture {

namespace {

void check_dims(int width, int height, int channels) {
    require(width >= 1 && height >= 1, ErrorKind::InvalidInput,
            "image dimensions must be positive, got " + std::to_string(width) + "x" +
                std::to_string(height));
    require(channels == 1 || channels == 3, ErrorKind::InvalidInput,
            "image must have 1 or 3 channels, got " + std::to_string(channels));
}

} // namespace

ImageBuffer::ImageBuffer(int width, int height, int channels, std::uint8_t fill)
    : width_(width), height_(height), channels_(channels) {
    check_dims(width, height, channels);
    data_.assign(pixel_count() * static_cast<std::size_t>(channels), fill);
}

ImageBuffer::ImageBuffer(int width, int height, int channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
    check_dims(width, height, channels);
    require(data_.size() == pixel_count() * static_cast<std::size_t>(channels),
            ErrorKind::InvalidInput, "image data length does not match dimensions");
}

RealImage::RealImage(int width, int height, double fill) : width_(width), height_(height) {
    check_dims(width, height, 1);
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

RealImage::RealImage(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height, 1);
    require(data_.size() == static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
            ErrorKind::InvalidInput, "real image data length does not match dimensions");
}

double RealImage::max_value() const noexcept {
    if (data_.empty())
        return 0.0;
    return *std::max_element(data_.begin(), data_.end());
}

RealImage to_real(const ImageBuffer &gray) {
    require(gray.channels() == 1, ErrorKind::InvalidInput, "to_real expects a 1-channel image");
    std::vector<double> values(gray.data().begin(), gray.data().end());
    return RealImage(gray.width(), gray.height(), std::move(values));
}

} // namespace gesture
