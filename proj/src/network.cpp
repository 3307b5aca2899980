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

#include "gesture/network.hpp"

#include <cmath>
#include <cstdio>
#include <map>

#include "gesture/error.hpp"
#include "gesture/kernels.hpp"
#include "gesture/layers.hpp"

namespace gesture {

namespace {

struct Trace {
    std::vector<Tensor> acts; // acts[0] is the input, acts[i + 1] the output of layer i
    std::vector<std::vector<std::size_t>> argmax;
    std::vector<std::vector<double>> masks;
};

std::vector<int> param_slots(const std::vector<LayerSpec> &specs) {
    std::vector<int> slot(specs.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < specs.size(); ++i)
        if (specs[i].has_params()) {
            slot[i] = next;
            next += 2;
        }
    return slot;
}

kernels::ConvDims conv_dims(const Shape &in, const LayerSpec &spec) {
    kernels::ConvDims d;
    d.height = static_cast<int>(in[0]);
    d.width = static_cast<int>(in[1]);
    d.in_channels = static_cast<int>(in[2]);
    d.kernel = spec.kernel;
    d.out_channels = spec.filters;
    return d;
}

std::vector<double> forward(const Network &net, const Tensor &sample, bool training,
                            std::mt19937_64 *rng, Trace *trace) {
    require(sample.shape() == net.input().shape(), ErrorKind::InvalidInput,
            "network input shape " + shape_string(sample.shape()) + " != expected " +
                shape_string(net.input().shape()));
    const auto &specs = net.specs();
    const auto slots = param_slots(specs);
    const auto &tensors = net.params().tensors;
    if (trace) {
        trace->acts.clear();
        trace->acts.push_back(sample);
        trace->argmax.assign(specs.size(), {});
        trace->masks.assign(specs.size(), {});
    }

    Tensor x = sample;
    std::vector<double> probs;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto &spec = specs[i];
        switch (spec.kind) {
        case LayerKind::Conv2d:
            x = conv2d(x, tensors[static_cast<std::size_t>(slots[i])],
                       tensors[static_cast<std::size_t>(slots[i]) + 1]);
            break;
        case LayerKind::Dense:
            x = dense(x, tensors[static_cast<std::size_t>(slots[i])],
                      tensors[static_cast<std::size_t>(slots[i]) + 1]);
            break;
        case LayerKind::MaxPool2x2: {
            auto pooled = maxpool2x2(x);
            x = std::move(pooled.output);
            if (trace)
                trace->argmax[i] = std::move(pooled.argmax);
            break;
        }
        case LayerKind::Dropout: {
            if (training && spec.rate > 0.0) {
                std::vector<double> mask;
                x = dropout(x, spec.rate, *rng, true, &mask);
                if (trace)
                    trace->masks[i] = std::move(mask);
            }
            break;
        }
        case LayerKind::Flatten:
            x = x.reshaped({x.size()});
            break;
        case LayerKind::Relu:
            x = relu(x);
            break;
        case LayerKind::Softmax:
            x = softmax(x);
            probs = x.values();
            break;
        }
        if (trace)
            trace->acts.push_back(x);
    }
    return probs;
}

// Adds d(-log p[label]) / d(params) into grads.
void backward(const Network &net, const Trace &trace, int label, std::vector<Tensor> &grads) {
    const auto &specs = net.specs();
    const auto slots = param_slots(specs);
    const auto &tensors = net.params().tensors;

    const std::size_t last = specs.size() - 1; // the softmax
    Tensor g = trace.acts[last + 1];
    g[static_cast<std::size_t>(label)] -= 1.0;

    for (std::size_t li = last; li-- > 0;) {
        const auto &spec = specs[li];
        const Tensor &in = trace.acts[li];
        const Tensor &out = trace.acts[li + 1];
        const bool need_input_grad = li > 0;
        switch (spec.kind) {
        case LayerKind::Conv2d: {
            const auto s = static_cast<std::size_t>(slots[li]);
            Tensor gin = need_input_grad ? Tensor(in.shape()) : Tensor();
            kernels::parallel::conv2d_backward(in.data(), tensors[s].data(), g.data(), gin.data(),
                                               grads[s].data(), grads[s + 1].data(),
                                               conv_dims(in.shape(), spec));
            g = std::move(gin);
            break;
        }
        case LayerKind::Dense: {
            const auto s = static_cast<std::size_t>(slots[li]);
            Tensor gin = need_input_grad ? Tensor(in.shape()) : Tensor();
            kernels::parallel::dense_backward(in.data(), tensors[s].data(), g.data(), gin.data(),
                                              grads[s].data(), grads[s + 1].data());
            g = std::move(gin);
            break;
        }
        case LayerKind::MaxPool2x2: {
            Tensor gin(in.shape());
            const auto &arg = trace.argmax[li];
            for (std::size_t j = 0; j < g.size(); ++j)
                gin[arg[j]] += g[j];
            g = std::move(gin);
            break;
        }
        case LayerKind::Dropout: {
            const auto &mask = trace.masks[li];
            if (!mask.empty())
                for (std::size_t j = 0; j < g.size(); ++j)
                    g[j] *= mask[j];
            break;
        }
        case LayerKind::Flatten:
            g = g.reshaped(in.shape());
            break;
        case LayerKind::Relu:
            for (std::size_t j = 0; j < g.size(); ++j)
                if (!(out[j] > 0.0))
                    g[j] = 0.0;
            break;
        case LayerKind::Softmax:
            fail(ErrorKind::InvalidInput, "softmax must be the terminal layer");
        }
        if (g.size() == 0)
            break;
    }
}

std::uint64_t fnv1a(const std::string &s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace

const char *to_string(LayerKind kind) noexcept {
    switch (kind) {
    case LayerKind::Conv2d:
        return "conv2d";
    case LayerKind::MaxPool2x2:
        return "maxpool2x2";
    case LayerKind::Dropout:
        return "dropout";
    case LayerKind::Flatten:
        return "flatten";
    case LayerKind::Dense:
        return "dense";
    case LayerKind::Relu:
        return "relu";
    case LayerKind::Softmax:
        return "softmax";
    }
    return "?";
}

LayerKind layer_kind_from_string(const std::string &name) {
    for (auto k : {LayerKind::Conv2d, LayerKind::MaxPool2x2, LayerKind::Dropout, LayerKind::Flatten,
                   LayerKind::Dense, LayerKind::Relu, LayerKind::Softmax})
        if (name == to_string(k))
            return k;
    fail(ErrorKind::Format, "unknown layer kind '" + name + "'");
}

std::vector<LayerSpec> figure1_specs(int classes, double conv_dropout, double dense_dropout) {
    return {LayerSpec::conv(3, 32), LayerSpec::relu(),         LayerSpec::conv(3, 64),
            LayerSpec::relu(),      LayerSpec::maxpool(),      LayerSpec::drop(conv_dropout),
            LayerSpec::flatten(),   LayerSpec::fc(128),        LayerSpec::relu(),
            LayerSpec::drop(dense_dropout), LayerSpec::fc(classes), LayerSpec::softmax()};
}

std::vector<Shape> infer_shapes(const InputShape &input, const std::vector<LayerSpec> &specs) {
    require(input.height >= 1 && input.width >= 1 && input.channels >= 1, ErrorKind::InvalidInput,
            "input extents must be positive");
    std::vector<Shape> shapes;
    Shape cur = input.shape();
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto &s = specs[i];
        const std::string where = "layer " + std::to_string(i) + " (" + to_string(s.kind) + "): ";
        switch (s.kind) {
        case LayerKind::Conv2d:
            require(cur.size() == 3, ErrorKind::InvalidInput, where + "needs (H, W, C) input");
            require(s.kernel >= 1 && s.filters >= 1, ErrorKind::InvalidInput,
                    where + "kernel and filters must be positive");
            require(static_cast<std::size_t>(s.kernel) <= cur[0] &&
                        static_cast<std::size_t>(s.kernel) <= cur[1],
                    ErrorKind::InvalidInput, where + "kernel larger than " + shape_string(cur));
            cur = {cur[0] - static_cast<std::size_t>(s.kernel) + 1,
                   cur[1] - static_cast<std::size_t>(s.kernel) + 1,
                   static_cast<std::size_t>(s.filters)};
            break;
        case LayerKind::MaxPool2x2:
            require(cur.size() == 3 && cur[0] % 2 == 0 && cur[1] % 2 == 0, ErrorKind::InvalidInput,
                    where + "needs (H, W, C) input with even extents, got " + shape_string(cur));
            cur = {cur[0] / 2, cur[1] / 2, cur[2]};
            break;
        case LayerKind::Dropout:
            require(s.rate >= 0.0 && s.rate < 1.0, ErrorKind::InvalidInput,
                    where + "rate must be in [0, 1)");
            break;
        case LayerKind::Flatten:
            cur = {shape_size(cur)};
            break;
        case LayerKind::Dense:
            require(cur.size() == 1, ErrorKind::InvalidInput, where + "needs flattened input");
            require(s.units >= 1, ErrorKind::InvalidInput, where + "units must be positive");
            cur = {static_cast<std::size_t>(s.units)};
            break;
        case LayerKind::Relu:
            break;
        case LayerKind::Softmax:
            require(cur.size() == 1, ErrorKind::InvalidInput, where + "needs a vector input");
            break;
        }
        shapes.push_back(cur);
    }
    return shapes;
}

ParamCount count_params(const InputShape &input, const std::vector<LayerSpec> &specs) {
    const auto shapes = infer_shapes(input, specs);
    static const std::map<LayerKind, const char *> names = {
        {LayerKind::Conv2d, "convolution2d"}, {LayerKind::MaxPool2x2, "maxpooling2d"},
        {LayerKind::Dropout, "dropout"},      {LayerKind::Flatten, "flatten"},
        {LayerKind::Dense, "dense"}};
    std::map<LayerKind, int> seen;
    ParamCount count;
    Shape in = input.shape();
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto &s = specs[i];
        std::size_t n = 0;
        if (s.kind == LayerKind::Conv2d)
            n = static_cast<std::size_t>(s.kernel * s.kernel) * in[2] *
                    static_cast<std::size_t>(s.filters) +
                static_cast<std::size_t>(s.filters);
        else if (s.kind == LayerKind::Dense)
            n = in[0] * static_cast<std::size_t>(s.units) + static_cast<std::size_t>(s.units);
        count.total += n;
        if (s.kind == LayerKind::Relu || s.kind == LayerKind::Softmax) {
            if (!count.layers.empty())
                count.layers.back().output_shape = shapes[i];
        } else {
            const int index = ++seen[s.kind];
            count.layers.push_back(
                {std::string(names.at(s.kind)) + "_" + std::to_string(index), s.kind, shapes[i], n});
        }
        in = shapes[i];
    }
    return count;
}

std::size_t NetworkParams::scalar_count() const noexcept {
    std::size_t n = 0;
    for (const auto &t : tensors)
        n += t.size();
    return n;
}

NetworkParams init_params(const InputShape &input, const std::vector<LayerSpec> &specs,
                          std::uint64_t seed) {
    const auto shapes = infer_shapes(input, specs);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 0.01);

    std::size_t last_param = specs.size();
    for (std::size_t i = 0; i < specs.size(); ++i)
        if (specs[i].has_params())
            last_param = i;

    NetworkParams p;
    Shape in = input.shape();
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto &s = specs[i];
        const double bias = i == last_param ? 0.0 : 1.0;
        if (s.kind == LayerKind::Conv2d) {
            const auto k = static_cast<std::size_t>(s.kernel);
            const auto cout = static_cast<std::size_t>(s.filters);
            const double fan_in = static_cast<double>(k * k * in[2]);
            const double fan_out = static_cast<double>(k * k * cout);
            const double bound = 6.0 / (fan_in + fan_out);
            std::uniform_real_distribution<double> uniform(-bound, bound);
            Tensor w({k, k, in[2], cout});
            for (double &v : w.values())
                v = uniform(rng);
            p.tensors.push_back(std::move(w));
            p.tensors.emplace_back(Shape{cout}, bias);
        } else if (s.kind == LayerKind::Dense) {
            const auto m = static_cast<std::size_t>(s.units);
            Tensor w({in[0], m});
            for (double &v : w.values())
                v = normal(rng);
            p.tensors.push_back(std::move(w));
            p.tensors.emplace_back(Shape{m}, bias);
        }
        in = shapes[i];
    }
    return p;
}

Network::Network(InputShape input, std::vector<LayerSpec> specs)
    : Network(input, specs, init_params(input, specs, 0)) {}

Network::Network(InputShape input, std::vector<LayerSpec> specs, NetworkParams params)
    : input_(input), specs_(std::move(specs)), params_(std::move(params)) {
    require(!specs_.empty() && specs_.back().kind == LayerKind::Softmax, ErrorKind::InvalidInput,
            "network must end with a softmax layer");
    for (std::size_t i = 0; i + 1 < specs_.size(); ++i)
        require(specs_[i].kind != LayerKind::Softmax, ErrorKind::InvalidInput,
                "softmax is only allowed as the terminal layer");
    shapes_ = infer_shapes(input_, specs_);
    const auto expected = param_shapes();
    require(params_.tensors.size() == expected.size(), ErrorKind::InvalidInput,
            "expected " + std::to_string(expected.size()) + " parameter tensors, got " +
                std::to_string(params_.tensors.size()));
    for (std::size_t i = 0; i < expected.size(); ++i)
        require(params_.tensors[i].shape() == expected[i], ErrorKind::InvalidInput,
                "parameter tensor " + std::to_string(i) + " has shape " +
                    shape_string(params_.tensors[i].shape()) + ", expected " +
                    shape_string(expected[i]));
}

std::vector<Shape> Network::param_shapes() const {
    std::vector<Shape> out;
    Shape in = input_.shape();
    for (std::size_t i = 0; i < specs_.size(); ++i) {
        const auto &s = specs_[i];
        if (s.kind == LayerKind::Conv2d) {
            const auto k = static_cast<std::size_t>(s.kernel);
            out.push_back({k, k, in[2], static_cast<std::size_t>(s.filters)});
            out.push_back({static_cast<std::size_t>(s.filters)});
        } else if (s.kind == LayerKind::Dense) {
            out.push_back({in[0], static_cast<std::size_t>(s.units)});
            out.push_back({static_cast<std::size_t>(s.units)});
        }
        in = shapes_[i];
    }
    return out;
}

std::string Network::fingerprint() const {
    std::string canon = "in:" + std::to_string(input_.height) + "," + std::to_string(input_.width) +
                        "," + std::to_string(input_.channels) + ";";
    char rate[32];
    for (const auto &s : specs_) {
        std::snprintf(rate, sizeof rate, "%.17g", s.rate);
        canon += std::string(to_string(s.kind)) + ":" + std::to_string(s.kernel) + ":" +
                 std::to_string(s.filters) + ":" + rate + ":" + std::to_string(s.units) + ";";
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(canon)));
    return hex;
}

std::vector<double> Network::predict(const Tensor &sample) const {
    return forward(*this, sample, false, nullptr, nullptr);
}

BatchGradient backprop(const Network &net, std::span<const Tensor> inputs,
                       std::span<const int> labels, bool training, std::uint64_t dropout_seed) {
    require(!inputs.empty() && inputs.size() == labels.size(), ErrorKind::InvalidInput,
            "backprop: batch and label counts must match and be non-empty");
    BatchGradient out;
    for (const auto &s : net.param_shapes())
        out.grads.emplace_back(s);

    std::mt19937_64 rng(dropout_seed);
    Trace trace;
    for (std::size_t b = 0; b < inputs.size(); ++b) {
        const int label = labels[b];
        require(label >= 0 && static_cast<std::size_t>(label) < net.classes(),
                ErrorKind::InvalidInput, "backprop: label " + std::to_string(label) + " out of range");
        const auto probs = forward(net, inputs[b], training, &rng, &trace);
        out.loss -= std::log(std::max(probs[static_cast<std::size_t>(label)], kProbabilityFloor));
        backward(net, trace, label, out.grads);
    }
    const double scale = 1.0 / static_cast<double>(inputs.size());
    out.loss *= scale;
    for (auto &g : out.grads)
        for (double &v : g.values())
            v *= scale;
    return out;
}

double batch_loss(const Network &net, std::span<const Tensor> inputs, std::span<const int> labels,
                  bool training, std::uint64_t dropout_seed) {
    require(!inputs.empty() && inputs.size() == labels.size(), ErrorKind::InvalidInput,
            "batch_loss: batch and label counts must match and be non-empty");
    std::mt19937_64 rng(dropout_seed);
    std::vector<std::vector<double>> probs;
    probs.reserve(inputs.size());
    for (const auto &x : inputs)
        probs.push_back(forward(net, x, training, &rng, nullptr));
    return nll_loss(probs, labels);
}

} // namespace gesture
