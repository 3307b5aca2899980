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

#include "gesture/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gesture/error.hpp"
#include "gesture/layers.hpp"
#include "gesture/optimizer.hpp"

namespace gesture {

namespace {

void validate_dataset(const Network &net, const Dataset &data) {
    require(data.size() > 0, ErrorKind::InvalidInput, "dataset is empty");
    require(data.inputs.size() == data.labels.size(), ErrorKind::InvalidInput,
            "dataset image and label counts differ");
    for (int label : data.labels)
        require(label >= 0 && static_cast<std::size_t>(label) < net.classes(),
                ErrorKind::InvalidInput, "label " + std::to_string(label) + " out of range");
}

} // namespace

void TrainConfig::validate() const {
    require(learning_rate > 0.0, ErrorKind::InvalidInput, "learning rate must be positive");
    require(momentum >= 0.0 && momentum < 1.0, ErrorKind::InvalidInput,
            "momentum must be in [0, 1)");
    require(batch_size >= 1, ErrorKind::InvalidInput, "batch size must be positive");
    require(epochs >= 1, ErrorKind::InvalidInput, "epochs must be positive");
    require(conv_dropout >= 0.0 && conv_dropout < 1.0 && dense_dropout >= 0.0 &&
                dense_dropout < 1.0,
            ErrorKind::InvalidInput, "dropout rates must be in [0, 1)");
}

TrainResult train(Network &net, const Dataset &data, const TrainConfig &config,
                  const EpochCallback &on_epoch) {
    config.validate();
    validate_dataset(net, data);

    std::mt19937_64 rng(config.seed);
    std::vector<std::size_t> order(data.size());
    OptimizerState state = OptimizerState::zeros_like(net.params().tensors);
    const auto batch = static_cast<std::size_t>(config.batch_size);

    TrainResult result;
    std::vector<Tensor> xs;
    std::vector<int> ys;
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng);
        double total = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < order.size(); start += batch) {
            const std::size_t end = std::min(order.size(), start + batch);
            xs.clear();
            ys.clear();
            for (std::size_t i = start; i < end; ++i) {
                xs.push_back(data.inputs[order[i]]);
                ys.push_back(data.labels[order[i]]);
            }
            const auto grad = backprop(net, xs, ys, true, rng());
            if (!std::isfinite(grad.loss))
                fail(ErrorKind::Numeric, "training loss became non-finite in epoch " +
                                             std::to_string(epoch));
            nag_step(net.params().tensors, grad.grads, state, config.learning_rate,
                     config.momentum);
            total += grad.loss;
            ++batches;
        }
        const double loss = total / static_cast<double>(batches);
        result.epoch_loss.push_back(loss);
        if (on_epoch)
            on_epoch(epoch, loss);
    }
    return result;
}

double mean_loss(const Network &net, const Dataset &data) {
    validate_dataset(net, data);
    std::vector<std::vector<double>> probs;
    probs.reserve(data.size());
    for (const auto &x : data.inputs)
        probs.push_back(net.predict(x));
    return nll_loss(probs, data.labels);
}

std::size_t argmax(const std::vector<double> &values) {
    return static_cast<std::size_t>(
        std::distance(values.begin(), std::max_element(values.begin(), values.end())));
}

double accuracy(const Network &net, const Dataset &data) {
    validate_dataset(net, data);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < data.size(); ++i)
        if (argmax(net.predict(data.inputs[i])) == static_cast<std::size_t>(data.labels[i]))
            ++hits;
    return static_cast<double>(hits) / static_cast<double>(data.size());
}

} // namespace gesture
