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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gesture/error.hpp"
#include "gesture/fusion.hpp"
#include "gesture/layers.hpp"
#include "gesture/network.hpp"
#include "gesture/optimizer.hpp"
#include "gesture/trainer.hpp"
#include "gradcheck.hpp"
#include "support.hpp"

namespace gesture {
namespace {

using testing::random_tensor;

ErrorKind kind_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected a gesture::Error";
    return ErrorKind::InvalidInput;
}

// ---------------------------------------------------------------- layers

TEST(Conv2d, UnitKernelIsIdentity) {
    std::mt19937_64 rng(41);
    const Tensor in = random_tensor({5, 4, 1}, rng);
    EXPECT_EQ(conv2d(in, Tensor({1, 1, 1, 1}, 1.0), Tensor({1}, 0.0)), in);
}

TEST(Conv2d, ReferenceNetFirstLayerShape) {
    const Tensor out = conv2d(Tensor({28, 28, 1}), Tensor({3, 3, 1, 32}), Tensor({32}));
    EXPECT_EQ(out.shape(), (Shape{26, 26, 32}));
    const auto c = count_params({28, 28, 1}, {LayerSpec::conv(3, 32), LayerSpec::flatten(), LayerSpec::fc(2), LayerSpec::softmax()});
    EXPECT_EQ(c.layers[0].params, 320u);
}

TEST(Conv2d, MatchesBruteForce) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        const Tensor in = random_tensor({5, 5, 2}, rng), k = random_tensor({3, 3, 2, 3}, rng),
                     b = random_tensor({3}, rng);
        const Tensor got = conv2d(in, k, b), ref = testing::brute_conv(in, k, b);
        ASSERT_EQ(got.shape(), ref.shape());
        for (std::size_t i = 0; i < got.size(); ++i)
            ASSERT_NEAR(got[i], ref[i], 1e-12);
    }
}

TEST(Conv2d, ShapeMismatch) {
    EXPECT_EQ(kind_of([] { conv2d(Tensor({4, 4, 2}), Tensor({3, 3, 1, 2}), Tensor({2})); }),
              ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { conv2d(Tensor({2, 4, 1}), Tensor({3, 3, 1, 2}), Tensor({2})); }),
              ErrorKind::InvalidInput);
}

TEST(MaxPool, ConstantInput) {
    EXPECT_EQ(maxpool2x2(Tensor({4, 6, 2}, 3.0)).output, Tensor({2, 3, 2}, 3.0));
}

TEST(MaxPool, BlockMaximum) {
    const Tensor in({2, 2, 1}, std::vector<double>{1, 5, 3, 2});
    const auto r = maxpool2x2(in);
    EXPECT_EQ(r.output[0], 5.0);
    EXPECT_EQ(r.argmax[0], 1u);
}

TEST(MaxPool, ReferenceNetShapeAndOddExtent) {
    EXPECT_EQ(maxpool2x2(Tensor({24, 24, 64})).output.shape(), (Shape{12, 12, 64}));
    EXPECT_EQ(kind_of([] { maxpool2x2(Tensor({5, 4, 1})); }), ErrorKind::InvalidInput);
}

TEST(Relu, Values) {
    const Tensor in({3}, std::vector<double>{-3, 2, 0});
    const Tensor out = relu(in);
    EXPECT_EQ(out[0], 0.0);
    EXPECT_EQ(out[1], 2.0);
    EXPECT_EQ(relu(out), out);
}

TEST(Dense, IdentityWeights) {
    Tensor w({3, 3}, 0.0);
    for (std::size_t i = 0; i < 3; ++i)
        w[i * 3 + i] = 1.0;
    const Tensor x({3}, std::vector<double>{0.5, -2, 7});
    EXPECT_EQ(dense(x, w, Tensor({3}, 0.0)), x);
}

TEST(Dense, MatchesBruteForce) {
    std::mt19937_64 rng(43);
    const Tensor x = random_tensor({11}, rng), w = random_tensor({11, 4}, rng),
                 b = random_tensor({4}, rng);
    const Tensor got = dense(x, w, b), ref = testing::brute_dense(x, w, b);
    for (std::size_t i = 0; i < 4; ++i)
        EXPECT_NEAR(got[i], ref[i], 1e-12);
}

TEST(Dense, ShapeMismatch) {
    EXPECT_EQ(kind_of([] { dense(Tensor({3}), Tensor({4, 2}), Tensor({2})); }),
              ErrorKind::InvalidInput);
}

TEST(Dropout, RateZeroAndInferenceAreIdentity) {
    std::mt19937_64 rng(44);
    const Tensor x = random_tensor({50}, rng);
    EXPECT_EQ(dropout(x, 0.0, rng, true), x);
    EXPECT_EQ(dropout(x, 0.7, rng, false), x);
}

TEST(Dropout, PreservesExpectation) {
    std::mt19937_64 rng(45);
    const Tensor one({1}, 1.0);
    double sum = 0.0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i)
        sum += dropout(one, 0.5, rng, true)[0];
    EXPECT_NEAR(sum / trials, 1.0, 0.01);
}

TEST(Dropout, SurvivorsAreScaled) {
    std::mt19937_64 rng(46);
    std::vector<double> mask;
    const Tensor out = dropout(Tensor({200}, 2.0), 0.25, rng, true, &mask);
    for (std::size_t i = 0; i < 200; ++i) {
        ASSERT_TRUE(out[i] == 0.0 || std::abs(out[i] - 2.0 / 0.75) < 1e-15);
        ASSERT_EQ(out[i], 2.0 * mask[i]);
    }
}

TEST(Softmax, KnownValues) {
    const auto a = softmax(std::vector<double>{0, 0});
    EXPECT_DOUBLE_EQ(a[0], 0.5);
    const auto b = softmax(std::vector<double>{0, std::log(3.0)});
    EXPECT_NEAR(b[0], 0.25, 1e-15);
    EXPECT_NEAR(b[1], 0.75, 1e-15);
    const auto c = softmax(std::vector<double>{1000, 1000});
    EXPECT_EQ(c[0], 0.5);
    EXPECT_EQ(c[1], 0.5);
}

TEST(Softmax, PositiveNormalisedShiftInvariant) {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(-50, 50);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> z(7);
        for (double &v : z)
            v = u(rng);
        auto shifted = z;
        for (double &v : shifted)
            v += 123.0;
        const auto p = softmax(z), q = softmax(shifted);
        double s = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            ASSERT_GT(p[i], 0.0);
            ASSERT_NEAR(p[i], q[i], 1e-12);
            s += p[i];
        }
        ASSERT_NEAR(s, 1.0, 1e-12);
    }
}

TEST(NllLoss, KnownValues) {
    const std::vector<int> l0{0};
    EXPECT_EQ(nll_loss({{1.0, 0.0}}, l0), 0.0);
    EXPECT_NEAR(nll_loss({{0.5, 0.5}}, l0), std::numbers::ln2, 1e-15);
    const std::vector<int> l2{0, 1};
    EXPECT_NEAR(nll_loss({{1.0, 0.0}, {0.5, 0.5}}, l2), 0.346574, 1e-6);
}

TEST(NllLoss, ClampsZeroProbability) {
    const std::vector<int> l{1};
    EXPECT_NEAR(nll_loss({{1.0, 0.0}}, l), -std::log(1e-12), 1e-9);
}

TEST(NllLoss, LabelOutOfRange) {
    const std::vector<int> l{2};
    EXPECT_EQ(kind_of([&] { nll_loss({{0.5, 0.5}}, l); }), ErrorKind::InvalidInput);
}

// ---------------------------------------------------------------- network

TEST(Network, ReferenceNetParameterCounts) {
    const auto c = count_params({28, 28, 1}, figure1_specs());
    const std::vector<std::size_t> expect{320, 18496, 0, 0, 0, 1179776, 0, 1290};
    ASSERT_EQ(c.layers.size(), expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i)
        EXPECT_EQ(c.layers[i].params, expect[i]) << c.layers[i].name;
    EXPECT_EQ(c.total, 1199882u);
    EXPECT_EQ(c.layers[0].name, "convolution2d_1");
    EXPECT_EQ(c.layers[7].name, "dense_2");
    EXPECT_EQ(c.layers[4].output_shape, (Shape{9216}));
}

TEST(Network, ThreeChannelFirstLayer) {
    EXPECT_EQ(count_params({28, 28, 3}, figure1_specs()).layers[0].params, 896u);
}

TEST(Network, EmptyStackHasNoParameters) { EXPECT_EQ(count_params({4, 4, 1}, {}).total, 0u); }

TEST(Network, RequiresSingleTerminalSoftmax) {
    EXPECT_THROW(Network({4, 4, 1}, {LayerSpec::flatten(), LayerSpec::fc(2)}), Error);
    EXPECT_THROW(Network({4, 4, 1}, {LayerSpec::flatten(), LayerSpec::softmax(), LayerSpec::fc(2),
                                     LayerSpec::softmax()}),
                 Error);
    EXPECT_THROW(Network({4, 4, 1}, {LayerSpec::conv(5, 1), LayerSpec::flatten(), LayerSpec::fc(2),
                                     LayerSpec::softmax()}),
                 Error);
}

TEST(Network, FingerprintTracksArchitecture) {
    const Network a({28, 28, 1}, figure1_specs()), b({28, 28, 1}, figure1_specs());
    const Network c({28, 28, 1}, figure1_specs(10, 0.3));
    const Network d({56, 56, 1}, figure1_specs());
    EXPECT_EQ(a.fingerprint(), b.fingerprint());
    EXPECT_NE(a.fingerprint(), c.fingerprint());
    EXPECT_NE(a.fingerprint(), d.fingerprint());
}

TEST(Init, ConvBoundAsPrinted) {
    const InputShape in{28, 28, 1};
    const auto specs = figure1_specs();
    const auto p = init_params(in, specs, 5);
    ASSERT_EQ(p.tensors.size(), 8u);
    const double b1 = 6.0 / (9.0 + 288.0);
    EXPECT_NEAR(b1, 0.0202, 1e-4);
    const double b2 = 6.0 / (288.0 + 576.0);
    double max1 = 0, max2 = 0;
    for (double v : p.tensors[0].values())
        max1 = std::max(max1, std::abs(v));
    for (double v : p.tensors[2].values())
        max2 = std::max(max2, std::abs(v));
    EXPECT_LE(max1, b1);
    EXPECT_GT(max1, 0.9 * b1);
    EXPECT_LE(max2, b2);
    EXPECT_GT(max2, 0.9 * b2);
}

TEST(Init, DenseWeightsAndBiases) {
    const auto p = init_params({28, 28, 1}, figure1_specs(), 6);
    double mean = 0, sq = 0;
    const auto &w = p.tensors[4].values();
    for (double v : w) {
        mean += v;
        sq += v * v;
    }
    mean /= static_cast<double>(w.size());
    const double sd = std::sqrt(sq / static_cast<double>(w.size()) - mean * mean);
    EXPECT_NEAR(mean, 0.0, 1e-4);
    EXPECT_NEAR(sd, 0.01, 1e-4);
    for (std::size_t t : {1u, 3u, 5u})
        for (double v : p.tensors[t].values())
            ASSERT_EQ(v, 1.0);
    for (double v : p.tensors[7].values())
        ASSERT_EQ(v, 0.0);
}

TEST(Init, SeedDeterminism) {
    const auto a = init_params({28, 28, 1}, figure1_specs(), 9);
    const auto b = init_params({28, 28, 1}, figure1_specs(), 9);
    const auto c = init_params({28, 28, 1}, figure1_specs(), 10);
    EXPECT_EQ(a.tensors, b.tensors);
    EXPECT_NE(a.tensors, c.tensors);
}

TEST(Backprop, MatchesFiniteDifferencesOnSpecNet) {
    // 4x4 input, 2 filters, 3 classes.
    const InputShape in{4, 4, 1};
    const std::vector<LayerSpec> specs{LayerSpec::conv(3, 2), LayerSpec::relu(),
                                       LayerSpec::flatten(), LayerSpec::fc(3),
                                       LayerSpec::softmax()};
    std::mt19937_64 rng(48);
    NetworkParams p = init_params(in, specs, 1);
    for (auto &t : p.tensors)
        t = random_tensor(t.shape(), rng, -0.8, 0.8);
    Network net(in, specs, p);
    std::vector<Tensor> xs{random_tensor({4, 4, 1}, rng), random_tensor({4, 4, 1}, rng)};
    const auto r = testing::check_network_gradients(net, xs, {0, 2}, false, 0);
    EXPECT_GT(r.checked, r.total / 2);
    EXPECT_LE(r.worst, 1e-4);
}

TEST(Backprop, RandomTinyNetworksWithDropout) {
    std::mt19937_64 rng(49);
    for (int trial = 0; trial < 8; ++trial) {
        const auto t = testing::random_tiny_net(rng);
        NetworkParams p = init_params(t.input, t.specs, 3);
        for (auto &tensor : p.tensors)
            tensor = random_tensor(tensor.shape(), rng, -0.7, 0.7);
        Network net(t.input, t.specs, p);
        std::vector<Tensor> xs;
        std::vector<int> labels;
        for (int b = 0; b < 3; ++b) {
            xs.push_back(random_tensor(t.input.shape(), rng));
            labels.push_back(static_cast<int>(rng() % net.classes()));
        }
        const auto r = testing::check_network_gradients(net, xs, labels, true, 77);
        EXPECT_LE(r.worst, 1e-4) << "trial " << trial;
    }
}

TEST(Backprop, ZeroNetworkBiasGradient) {
    const InputShape in{3, 3, 1};
    const std::vector<LayerSpec> specs{LayerSpec::flatten(), LayerSpec::fc(4), LayerSpec::softmax()};
    NetworkParams p = init_params(in, specs, 0);
    for (auto &t : p.tensors)
        t.fill(0.0);
    const Network net(in, specs, p);
    const std::vector<Tensor> xs{Tensor({3, 3, 1}, 0.0)};
    const auto g = backprop(net, xs, std::vector<int>{2});
    for (std::size_t c = 0; c < 4; ++c)
        EXPECT_DOUBLE_EQ(g.grads[1][c], 0.25 - (c == 2 ? 1.0 : 0.0));
    EXPECT_NEAR(g.loss, std::log(4.0), 1e-15);
}

TEST(Backprop, DuplicatedBatchLeavesMeanGradientUnchanged) {
    std::mt19937_64 rng(50);
    const auto t = testing::random_tiny_net(rng);
    Network net(t.input, t.specs, init_params(t.input, t.specs, 4));
    std::vector<Tensor> xs{random_tensor(t.input.shape(), rng), random_tensor(t.input.shape(), rng)};
    std::vector<int> ls{0, 1};
    const auto once = backprop(net, xs, ls);
    const auto xs1 = xs;
    const auto ls1 = ls;
    xs.insert(xs.end(), xs1.begin(), xs1.end());
    ls.insert(ls.end(), ls1.begin(), ls1.end());
    const auto twice = backprop(net, xs, ls);
    for (std::size_t i = 0; i < once.grads.size(); ++i)
        for (std::size_t j = 0; j < once.grads[i].size(); ++j)
            ASSERT_NEAR(once.grads[i][j], twice.grads[i][j], 1e-15);
}

// ---------------------------------------------------------------- optimizer

TEST(Nag, ZeroMomentumIsGradientDescent) {
    std::mt19937_64 rng(51);
    std::vector<Tensor> w{random_tensor({5}, rng)}, g{random_tensor({5}, rng)};
    auto expect = w[0];
    for (std::size_t i = 0; i < 5; ++i)
        expect[i] = w[0][i] - 0.3 * g[0][i];
    auto state = OptimizerState::zeros_like(w);
    nag_step(w, g, state, 0.3, 0.0);
    EXPECT_EQ(w[0], expect);
}

TEST(Nag, FirstTwoSteps) {
    std::vector<Tensor> w{Tensor({1}, 0.0)}, g{Tensor({1}, 1.0)};
    auto state = OptimizerState::zeros_like(w);
    nag_step(w, g, state, 0.1, 0.9);
    EXPECT_NEAR(state.velocity[0][0], -0.1, 1e-15);
    EXPECT_NEAR(w[0][0], -0.19, 1e-15);
    nag_step(w, g, state, 0.1, 0.9);
    EXPECT_NEAR(state.velocity[0][0], -0.19, 1e-15);
    EXPECT_NEAR(w[0][0], -0.19 - 0.271, 1e-15);
}

TEST(Nag, ClosedForm) {
    std::mt19937_64 rng(52);
    std::vector<Tensor> w{random_tensor({6}, rng)};
    auto state = OptimizerState::zeros_like(w);
    state.velocity[0] = random_tensor({6}, rng);
    const auto g = std::vector<Tensor>{random_tensor({6}, rng)};
    const auto w0 = w[0], v0 = state.velocity[0];
    nag_step(w, g, state, 0.05, 0.9);
    for (std::size_t i = 0; i < 6; ++i)
        EXPECT_NEAR(w[0][i], w0[i] + 0.81 * v0[i] - 1.9 * 0.05 * g[0][i], 1e-14);
}

TEST(Nag, NonFiniteGradientLeavesParametersUntouched) {
    std::vector<Tensor> w{Tensor({2}, 1.0), Tensor({2}, 2.0)};
    std::vector<Tensor> g{Tensor({2}, 0.5), Tensor({2}, 0.5)};
    g[1][1] = std::nan("");
    auto state = OptimizerState::zeros_like(w);
    const auto before = w;
    EXPECT_EQ(kind_of([&] { nag_step(w, g, state, 0.1, 0.9); }), ErrorKind::Numeric);
    EXPECT_EQ(w, before);
}

// ---------------------------------------------------------------- trainer

Dataset separable_set(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 0.3);
    Dataset d;
    for (std::size_t i = 0; i < n; ++i) {
        const int label = static_cast<int>(i % 3);
        Tensor x({4, 4, 1});
        for (std::size_t j = 0; j < 16; ++j)
            x[j] = noise(rng) + (static_cast<int>(j % 3) == label ? 1.5 : 0.0);
        d.inputs.push_back(x);
        d.labels.push_back(label);
    }
    return d;
}

std::vector<LayerSpec> small_specs() {
    return {LayerSpec::conv(3, 2), LayerSpec::relu(), LayerSpec::flatten(), LayerSpec::fc(3),
            LayerSpec::softmax()};
}

TEST(Train, FirstEpochImprovesOnInitialLoss) {
    const Dataset d = separable_set(100, 53);
    const InputShape in{4, 4, 1};
    Network net(in, small_specs(), init_params(in, small_specs(), 1));
    const double before = mean_loss(net, d);
    TrainConfig cfg;
    cfg.epochs = 1;
    cfg.batch_size = 10;
    cfg.learning_rate = 0.05;
    train(net, d, cfg);
    EXPECT_LT(mean_loss(net, d), before);
}

TEST(Train, OverfitsSingleSample) {
    const InputShape in{4, 4, 1};
    Dataset one = separable_set(1, 54);
    Network net(in, small_specs(), init_params(in, small_specs(), 2));
    TrainConfig cfg;
    cfg.epochs = 200;
    cfg.batch_size = 1;
    cfg.learning_rate = 0.05;
    train(net, one, cfg);
    EXPECT_LT(mean_loss(net, one), 0.01);
}

TEST(Train, SameSeedSameHistory) {
    const Dataset d = separable_set(60, 55);
    const InputShape in{4, 4, 1};
    auto specs = small_specs();
    specs.insert(specs.begin() + 3, LayerSpec::drop(0.5));
    auto run = [&] {
        Network net(in, specs, init_params(in, specs, 3));
        TrainConfig cfg;
        cfg.epochs = 3;
        cfg.seed = 42;
        const auto r = train(net, d, cfg);
        return std::make_pair(r.epoch_loss, net.params().tensors);
    };
    EXPECT_EQ(run(), run());
}

TEST(Train, ConfigValidation) {
    TrainConfig bad;
    bad.momentum = 1.0;
    EXPECT_EQ(kind_of([&] { bad.validate(); }), ErrorKind::InvalidInput);
    bad = {};
    bad.learning_rate = 0.0;
    EXPECT_THROW(bad.validate(), Error);
    bad = {};
    bad.batch_size = 0;
    EXPECT_THROW(bad.validate(), Error);
}

// ---------------------------------------------------------------- fusion

TEST(Fusion, ProductRenormalised) {
    const auto f = fuse_predict(std::vector<double>{0.5, 0.5}, std::vector<double>{0.8, 0.2});
    EXPECT_NEAR(f.probs[0], 0.8, 1e-15);
    EXPECT_NEAR(f.probs[1], 0.2, 1e-15);
    EXPECT_EQ(f.label, 0u);
}

TEST(Fusion, UniformFactorIsNeutral) {
    const std::vector<double> p{0.1, 0.6, 0.3}, u(3, 1.0 / 3.0);
    const auto f = fuse_predict(p, u);
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_NEAR(f.probs[i], p[i], 1e-15);
    EXPECT_EQ(f.label, 1u);
}

TEST(Fusion, TiesGoToLowerIndex) {
    const auto f = fuse_predict(std::vector<double>{0.25, 0.25, 0.5},
                                std::vector<double>{0.5, 0.5, 0.0});
    EXPECT_EQ(f.label, 0u);
}

TEST(Fusion, PowerInvarianceWhenFactorsAgree) {
    std::mt19937_64 rng(56);
    std::uniform_real_distribution<double> u(0.01, 1.0), a(0.2, 4.0);
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<double> p(5), q(5);
        for (auto *v : {&p, &q}) {
            double s = 0;
            for (double &x : *v)
                s += (x = u(rng));
            for (double &x : *v)
                x /= s;
        }
        if (argmax(p) != argmax(q))
            continue;
        ++checked;
        const double alpha = a(rng);
        std::vector<double> pa(5);
        double s = 0;
        for (std::size_t i = 0; i < 5; ++i)
            s += (pa[i] = std::pow(p[i], alpha));
        for (double &x : pa)
            x /= s;
        ASSERT_EQ(fuse_predict(p, q).label, fuse_predict(pa, q).label);
    }
    EXPECT_GT(checked, 200);
}

TEST(Fusion, Errors) {
    EXPECT_EQ(kind_of([] {
                  fuse_predict(std::vector<double>{1.0, 0.0}, std::vector<double>{0.0, 1.0});
              }),
              ErrorKind::DegenerateFusion);
    EXPECT_EQ(kind_of([] {
                  fuse_predict(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0});
              }),
              ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] {
                  fuse_predict(std::vector<double>{0.5, 0.6}, std::vector<double>{0.5, 0.5});
              }),
              ErrorKind::InvalidInput);
}

} // namespace
} // namespace gesture
