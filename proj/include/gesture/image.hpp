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

#ifndef GESTURE_IMAGE_HPP
#define GESTURE_IMAGE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gesture {

/// Pixel coordinate: x is the column, y the row, origin top-left.
struct Point {
    int x = 0;
    int y = 0;

    friend bool operator==(const Point &, const Point &) = default;
    friend auto operator<=>(const Point &, const Point &) = default;
};

/// Row-major, channel-interleaved byte image with 1 or 3 channels.
class ImageBuffer {
  public:
    ImageBuffer() = default;
    ImageBuffer(int width, int height, int channels, std::uint8_t fill = 0);
    ImageBuffer(int width, int height, int channels, std::vector<std::uint8_t> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int channels() const noexcept { return channels_; }
    std::size_t pixel_count() const noexcept {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }
    bool empty() const noexcept { return data_.empty(); }

    std::uint8_t &at(int x, int y, int c = 0) noexcept {
        return data_[index(x, y, c)];
    }
    std::uint8_t at(int x, int y, int c = 0) const noexcept {
        return data_[index(x, y, c)];
    }

    std::span<std::uint8_t> data() noexcept { return data_; }
    std::span<const std::uint8_t> data() const noexcept { return data_; }
    const std::vector<std::uint8_t> &bytes() const noexcept { return data_; }

    bool same_size(const ImageBuffer &other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const ImageBuffer &, const ImageBuffer &) = default;

  private:
    std::size_t index(int x, int y, int c) const noexcept {
        return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                static_cast<std::size_t>(x)) *
                   static_cast<std::size_t>(channels_) +
               static_cast<std::size_t>(c);
    }

    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Single-channel image of non-negative reals (probability maps, gradients).
class RealImage {
  public:
    RealImage() = default;
    RealImage(int width, int height, double fill = 0.0);
    RealImage(int width, int height, std::vector<double> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    double &at(int x, int y) noexcept {
        return data_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                     static_cast<std::size_t>(x)];
    }
    double at(int x, int y) const noexcept {
        return data_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                     static_cast<std::size_t>(x)];
    }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    double max_value() const noexcept;

    friend bool operator==(const RealImage &, const RealImage &) = default;

  private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

/// Promotes a 1-channel byte image to reals without rescaling.
RealImage to_real(const ImageBuffer &gray);

} // namespace gesture

#endif
