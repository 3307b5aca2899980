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

#ifndef GESTURE_TRAINER_HPP
#define GESTURE_TRAINER_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "gesture/network.hpp"
#include "gesture/tensor.hpp"

namespace gesture {

/// Samples are (H, W, C) tensors; labels are class indices.
struct Dataset {
    std::vector<Tensor> inputs;
    std::vector<int> labels;

    std::size_t size() const noexcept { return inputs.size(); }
};

struct TrainConfig {
    double learning_rate = 0.01;
    double momentum = 0.9;
    int batch_size = 40;
    int epochs = 5;
    std::uint64_t seed = 0;
    double conv_dropout = 0.25;
    double dense_dropout = 0.5;

    void validate() const;
};

struct TrainResult {
    /// Mean training-mode batch loss of each epoch.
    std::vector<double> epoch_loss;
};

using EpochCallback = std::function<void(int epoch, double loss)>;

/// Seeded shuffle per epoch, then forward/backprop/nag_step per mini-batch.
TrainResult train(Network &net, const Dataset &data, const TrainConfig &config,
                  const EpochCallback &on_epoch = {});

/// Inference-mode mean NLL over the dataset.
double mean_loss(const Network &net, const Dataset &data);

/// Fraction of samples whose argmax matches the label.
double accuracy(const Network &net, const Dataset &data);

std::size_t argmax(const std::vector<double> &values);

} // namespace gesture

#endif
