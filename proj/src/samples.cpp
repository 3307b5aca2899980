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

#include "gesture/samples.hpp"

#include <cmath>
#include <numbers>

#include "gesture/error.hpp"
#include "gesture/preprocess.hpp"

namespace gesture {

namespace {

int scale_for(const InputShape &input, int side) {
    require(input.height == input.width, ErrorKind::InvalidInput,
            "network input must be square to accept image samples");
    if (input.height == side)
        return 1;
    if (input.height == 2 * side)
        return 2;
    fail(ErrorKind::InvalidInput, "network input " + std::to_string(input.height) + "x" +
                                      std::to_string(input.width) + " cannot take " +
                                      std::to_string(side) + "x" + std::to_string(side) +
                                      " samples");
}

} // namespace

bool accepts(const InputShape &input, int source_side) {
    return input.height == input.width &&
           (input.height == source_side || input.height == 2 * source_side) &&
           (input.channels == 1 || input.channels == 3);
}

Tensor image_to_sample(const ImageBuffer &gray, const InputShape &input) {
    require(gray.channels() == 1 && gray.width() == gray.height(), ErrorKind::InvalidInput,
            "image_to_sample: expects a square grayscale image");
    require(input.channels == 1 || input.channels == 3, ErrorKind::InvalidInput,
            "image_to_sample: network must take 1 or 3 channels");
    const int scale = scale_for(input, gray.width());
    const auto c = static_cast<std::size_t>(input.channels);
    const auto side = static_cast<std::size_t>(input.height);
    Tensor t(input.shape());
    RealImage grad;
    if (c == 3)
        grad = sobel_magnitude(gray);
    const double grad_scale = 255.0 / (1020.0 * std::numbers::sqrt2);
    for (std::size_t y = 0; y < side; ++y)
        for (std::size_t x = 0; x < side; ++x) {
            const int sx = static_cast<int>(x) / scale, sy = static_cast<int>(y) / scale;
            double *cell = &t[(y * side + x) * c];
            cell[0] = gray.at(sx, sy);
            if (c == 3)
                cell[1] = grad.at(sx, sy) * grad_scale;
        }
    return t;
}

Tensor volume_to_sample(const Tensor &volume, const InputShape &input) {
    require(volume.rank() == 4 && volume.dim(3) == 3 && volume.dim(1) == volume.dim(2),
            ErrorKind::InvalidInput, "volume_to_sample: expects a (T, S, S, 3) volume");
    require(input.channels == 1 || input.channels == 3, ErrorKind::InvalidInput,
            "volume_to_sample: network must take 1 or 3 channels");
    const std::size_t frames = volume.dim(0), src = volume.dim(1);
    const int scale = scale_for(input, static_cast<int>(src));
    const auto c = static_cast<std::size_t>(input.channels);
    const auto side = static_cast<std::size_t>(input.height);

    std::vector<double> mean(src * src * 3, 0.0);
    for (std::size_t t = 0; t < frames; ++t)
        for (std::size_t i = 0; i < mean.size(); ++i)
            mean[i] += volume[t * mean.size() + i];
    for (double &v : mean)
        v /= static_cast<double>(frames);

    Tensor out(input.shape());
    for (std::size_t y = 0; y < side; ++y)
        for (std::size_t x = 0; x < side; ++x) {
            const std::size_t s = ((y / static_cast<std::size_t>(scale)) * src +
                                   x / static_cast<std::size_t>(scale)) *
                                  3;
            for (std::size_t ch = 0; ch < c; ++ch)
                out[(y * side + x) * c + ch] = mean[s + ch];
        }
    return out;
}

Dataset to_dataset(const DigitDataset &digits, const InputShape &input) {
    Dataset d;
    d.inputs.reserve(digits.size());
    for (const auto &img : digits.images)
        d.inputs.push_back(image_to_sample(img, input));
    d.labels = digits.labels;
    return d;
}

std::vector<std::vector<double>> to_unit_vectors(const std::vector<ImageBuffer> &images) {
    std::vector<std::vector<double>> out;
    out.reserve(images.size());
    for (const auto &img : images) {
        std::vector<double> v(img.data().size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = img.data()[i] / 255.0;
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace gesture
