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

#ifndef GESTURE_LAYERS_HPP
#define GESTURE_LAYERS_HPP

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "gesture/tensor.hpp"

namespace gesture {

// Stateless layer operations. Spatial tensors are (H, W, C); conv kernels are
// (K, K, Cin, Cout); dense weights are (N, M).

/// Valid cross-correlation plus per-channel bias.
Tensor conv2d(const Tensor &input, const Tensor &kernels, const Tensor &bias);

struct PoolResult {
    Tensor output;
    /// Flat input index of the maximum feeding each output element.
    std::vector<std::size_t> argmax;
};

/// 2x2 max pooling with stride 2; ties go to the first element in raster order.
PoolResult maxpool2x2(const Tensor &input);

Tensor relu(const Tensor &input);

Tensor dense(const Tensor &input, const Tensor &weights, const Tensor &bias);

/// Inverted dropout. In training mode each element is zeroed with probability
/// `rate` and survivors are scaled by 1/(1 - rate); the applied per-element
/// factor is written to `mask` when given. Inference mode is the identity.
Tensor dropout(const Tensor &input, double rate, std::mt19937_64 &rng, bool training,
               std::vector<double> *mask = nullptr);

/// Max-subtracted softmax.
std::vector<double> softmax(std::span<const double> logits);
Tensor softmax(const Tensor &logits);

inline constexpr double kProbabilityFloor = 1e-12;

/// -(1/|D|) sum log p[label], probabilities floored at 1e-12.
double nll_loss(const std::vector<std::vector<double>> &probs, std::span<const int> labels);

} // namespace gesture

#endif
