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

#ifndef GESTURE_TENSOR_HPP
#define GESTURE_TENSOR_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace gesture {

using Shape = std::vector<std::size_t>;

std::size_t shape_size(const Shape &shape) noexcept;
std::string shape_string(const Shape &shape);

/// Dense row-major array of doubles.
class Tensor {
  public:
    Tensor() = default;
    explicit Tensor(Shape shape, double fill = 0.0);
    Tensor(Shape shape, std::vector<double> data);
    Tensor(std::initializer_list<std::size_t> shape, double fill = 0.0)
        : Tensor(Shape(shape), fill) {}

    const Shape &shape() const noexcept { return shape_; }
    std::size_t rank() const noexcept { return shape_.size(); }
    std::size_t size() const noexcept { return data_.size(); }
    std::size_t dim(std::size_t axis) const { return shape_.at(axis); }

    double &operator[](std::size_t i) noexcept { return data_[i]; }
    double operator[](std::size_t i) const noexcept { return data_[i]; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }
    std::vector<double> &values() noexcept { return data_; }
    const std::vector<double> &values() const noexcept { return data_; }

    void fill(double v);
    /// Same data, new shape with the same element count.
    Tensor reshaped(Shape shape) const;

    friend bool operator==(const Tensor &, const Tensor &) = default;

  private:
    Shape shape_;
    std::vector<double> data_;
};

} // namespace gesture

#endif
