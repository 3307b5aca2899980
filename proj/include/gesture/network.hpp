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

#ifndef GESTURE_NETWORK_HPP
#define GESTURE_NETWORK_HPP

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gesture/tensor.hpp"

namespace gesture {

enum class LayerKind { Conv2d, MaxPool2x2, Dropout, Flatten, Dense, Relu, Softmax };

const char *to_string(LayerKind kind) noexcept;
LayerKind layer_kind_from_string(const std::string &name);

struct LayerSpec {
    LayerKind kind = LayerKind::Relu;
    int kernel = 0;   // conv2d
    int filters = 0;  // conv2d
    double rate = 0;  // dropout
    int units = 0;    // dense

    static LayerSpec conv(int kernel, int filters) { return {LayerKind::Conv2d, kernel, filters}; }
    static LayerSpec maxpool() { return {LayerKind::MaxPool2x2}; }
    static LayerSpec drop(double rate) { return {LayerKind::Dropout, 0, 0, rate}; }
    static LayerSpec flatten() { return {LayerKind::Flatten}; }
    static LayerSpec fc(int units) { return {LayerKind::Dense, 0, 0, 0, units}; }
    static LayerSpec relu() { return {LayerKind::Relu}; }
    static LayerSpec softmax() { return {LayerKind::Softmax}; }

    bool has_params() const noexcept {
        return kind == LayerKind::Conv2d || kind == LayerKind::Dense;
    }

    friend bool operator==(const LayerSpec &, const LayerSpec &) = default;
};

struct InputShape {
    int height = 28;
    int width = 28;
    int channels = 1;

    Shape shape() const {
        return {static_cast<std::size_t>(height), static_cast<std::size_t>(width),
                static_cast<std::size_t>(channels)};
    }
    friend bool operator==(const InputShape &, const InputShape &) = default;
};

/// conv(3x3,32) relu conv(3x3,64) relu maxpool dropout flatten dense(128) relu
/// dropout dense(classes) softmax.
std::vector<LayerSpec> figure1_specs(int classes = 10, double conv_dropout = 0.25,
                                     double dense_dropout = 0.5);

/// Output shape of every layer; throws InvalidInput on incompatible layers.
std::vector<Shape> infer_shapes(const InputShape &input, const std::vector<LayerSpec> &specs);

struct LayerCount {
    std::string name; // Keras-style, e.g. "convolution2d_1"
    LayerKind kind;
    Shape output_shape;
    std::size_t params = 0;
};

struct ParamCount {
    /// One row per layer, with standalone activations folded into the layer
    /// before them (as a model summary lists them).
    std::vector<LayerCount> layers;
    std::size_t total = 0;
};

ParamCount count_params(const InputShape &input, const std::vector<LayerSpec> &specs);

/// Parameter tensors in layer order: weights then bias for each conv/dense.
struct NetworkParams {
    std::vector<Tensor> tensors;

    std::size_t scalar_count() const noexcept;
};

/// Uniform[-b, b] with b = 6/(n_in + n_out) for conv kernels (fans are
/// K*K*Cin and K*K*Cout), Normal(0, 0.01) for dense weights, biases 1 except
/// the last parametrised layer whose biases are 0.
NetworkParams init_params(const InputShape &input, const std::vector<LayerSpec> &specs,
                          std::uint64_t seed);

/// Architecture plus parameters. The layer list must end in exactly one
/// softmax.
class Network {
  public:
    Network(InputShape input, std::vector<LayerSpec> specs);
    Network(InputShape input, std::vector<LayerSpec> specs, NetworkParams params);

    const InputShape &input() const noexcept { return input_; }
    const std::vector<LayerSpec> &specs() const noexcept { return specs_; }
    const std::vector<Shape> &shapes() const noexcept { return shapes_; }
    std::size_t classes() const noexcept { return shapes_.back()[0]; }

    NetworkParams &params() noexcept { return params_; }
    const NetworkParams &params() const noexcept { return params_; }

    /// Shapes the parameter tensors must have, in order.
    std::vector<Shape> param_shapes() const;

    /// FNV-1a hash of input shape and layer list, hex encoded.
    std::string fingerprint() const;

    /// Inference-mode class probabilities for one (H, W, C) sample.
    std::vector<double> predict(const Tensor &sample) const;

  private:
    InputShape input_;
    std::vector<LayerSpec> specs_;
    std::vector<Shape> shapes_;
    NetworkParams params_;
};

struct BatchGradient {
    std::vector<Tensor> grads; // mirrors NetworkParams::tensors
    double loss = 0.0;         // mean NLL over the batch
};

/// Mean NLL and its exact gradient over a batch. Dropout (when `training`)
/// draws its masks from a generator seeded with `dropout_seed`; each mask is
/// reused by the backward pass.
BatchGradient backprop(const Network &net, std::span<const Tensor> inputs,
                       std::span<const int> labels, bool training = false,
                       std::uint64_t dropout_seed = 0);

/// Mean NLL only, same conventions as backprop.
double batch_loss(const Network &net, std::span<const Tensor> inputs, std::span<const int> labels,
                  bool training = false, std::uint64_t dropout_seed = 0);

} // namespace gesture

#endif
