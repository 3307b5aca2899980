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

#include "gesture/layers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gesture/error.hpp"
#include "gesture/kernels.hpp"

namespace gesture {

Tensor conv2d(const Tensor &input, const Tensor &kernels, const Tensor &bias) {
    require(input.rank() == 3, ErrorKind::InvalidInput, "conv2d: input must be (H, W, C)");
    require(kernels.rank() == 4 && kernels.dim(0) == kernels.dim(1), ErrorKind::InvalidInput,
            "conv2d: kernels must be (K, K, Cin, Cout)");
    const auto k = kernels.dim(0);
    require(kernels.dim(2) == input.dim(2), ErrorKind::InvalidInput,
            "conv2d: kernel input channels " + std::to_string(kernels.dim(2)) +
                " != input channels " + std::to_string(input.dim(2)));
    require(k <= input.dim(0) && k <= input.dim(1), ErrorKind::InvalidInput,
            "conv2d: kernel larger than input " + shape_string(input.shape()));
    require(bias.size() == kernels.dim(3), ErrorKind::InvalidInput,
            "conv2d: bias length must equal output channels");

    kernels::ConvDims d;
    d.height = static_cast<int>(input.dim(0));
    d.width = static_cast<int>(input.dim(1));
    d.in_channels = static_cast<int>(input.dim(2));
    d.kernel = static_cast<int>(k);
    d.out_channels = static_cast<int>(kernels.dim(3));
    Tensor out({static_cast<std::size_t>(d.out_height()), static_cast<std::size_t>(d.out_width()),
                kernels.dim(3)});
    kernels::parallel::conv2d_forward(input.data(), kernels.data(), bias.data(), out.data(), d);
    return out;
}

PoolResult maxpool2x2(const Tensor &input) {
    require(input.rank() == 3, ErrorKind::InvalidInput, "maxpool2x2: input must be (H, W, C)");
    const std::size_t h = input.dim(0), w = input.dim(1), c = input.dim(2);
    require(h % 2 == 0 && w % 2 == 0, ErrorKind::InvalidInput,
            "maxpool2x2: spatial extents must be even, got " + shape_string(input.shape()));
    PoolResult r{Tensor({h / 2, w / 2, c}), {}};
    r.argmax.resize(r.output.size());
    for (std::size_t y = 0; y < h / 2; ++y)
        for (std::size_t x = 0; x < w / 2; ++x)
            for (std::size_t ch = 0; ch < c; ++ch) {
                std::size_t best = ((2 * y) * w + 2 * x) * c + ch;
                for (std::size_t dy = 0; dy < 2; ++dy)
                    for (std::size_t dx = 0; dx < 2; ++dx) {
                        const std::size_t i = ((2 * y + dy) * w + (2 * x + dx)) * c + ch;
                        if (input[i] > input[best])
                            best = i;
                    }
                const std::size_t o = (y * (w / 2) + x) * c + ch;
                r.output[o] = input[best];
                r.argmax[o] = best;
            }
    return r;
}

Tensor relu(const Tensor &input) {
    Tensor out = input;
    for (double &v : out.values())
        v = v > 0.0 ? v : 0.0;
    return out;
}

Tensor dense(const Tensor &input, const Tensor &weights, const Tensor &bias) {
    require(weights.rank() == 2, ErrorKind::InvalidInput, "dense: weights must be (N, M)");
    require(input.size() == weights.dim(0), ErrorKind::InvalidInput,
            "dense: input length " + std::to_string(input.size()) + " != weight rows " +
                std::to_string(weights.dim(0)));
    require(bias.size() == weights.dim(1), ErrorKind::InvalidInput,
            "dense: bias length must equal output units");
    Tensor out({weights.dim(1)});
    kernels::parallel::dense_forward(input.data(), weights.data(), bias.data(), out.data());
    return out;
}

Tensor dropout(const Tensor &input, double rate, std::mt19937_64 &rng, bool training,
               std::vector<double> *mask) {
    require(rate >= 0.0 && rate < 1.0, ErrorKind::InvalidInput, "dropout: rate must be in [0, 1)");
    if (!training || rate == 0.0) {
        if (mask)
            mask->assign(input.size(), 1.0);
        return input;
    }
    const double keep = 1.0 / (1.0 - rate);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Tensor out = input;
    if (mask)
        mask->resize(input.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double f = u(rng) < rate ? 0.0 : keep;
        out[i] *= f;
        if (mask)
            (*mask)[i] = f;
    }
    return out;
}

std::vector<double> softmax(std::span<const double> logits) {
    require(!logits.empty(), ErrorKind::InvalidInput, "softmax: empty logits");
    const double peak = *std::max_element(logits.begin(), logits.end());
    std::vector<double> p(logits.size());
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = std::exp(logits[i] - peak);
        total += p[i];
    }
    for (double &v : p)
        v /= total;
    return p;
}

Tensor softmax(const Tensor &logits) { return Tensor(logits.shape(), softmax(logits.data())); }

double nll_loss(const std::vector<std::vector<double>> &probs, std::span<const int> labels) {
    require(!probs.empty(), ErrorKind::InvalidInput, "nll_loss: empty batch");
    require(probs.size() == labels.size(), ErrorKind::InvalidInput,
            "nll_loss: batch and label counts differ");
    double total = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const int label = labels[i];
        require(label >= 0 && static_cast<std::size_t>(label) < probs[i].size(),
                ErrorKind::InvalidInput,
                "nll_loss: label " + std::to_string(label) + " out of range");
        total -= std::log(std::max(probs[i][static_cast<std::size_t>(label)], kProbabilityFloor));
    }
    return total / static_cast<double>(probs.size());
}

} // namespace gesture
