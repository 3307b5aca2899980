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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "gesture/kernels.hpp"

namespace {

using namespace gesture::kernels;

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (double &x : v)
        x = u(rng);
    return v;
}

std::vector<std::uint8_t> random_bytes(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> u(0, 255);
    std::vector<std::uint8_t> v(n);
    for (auto &x : v)
        x = static_cast<std::uint8_t>(u(rng));
    return v;
}

// Second convolution of the digit network: 26x26x32 -> 24x24x64.
const ConvDims kConv{26, 26, 32, 3, 64};

std::size_t conv_in() { return 26u * 26u * 32u; }
std::size_t conv_out() { return 24u * 24u * 64u; }
std::size_t conv_w() { return 3u * 3u * 32u * 64u; }

template <bool Parallel> void BM_ConvForward(benchmark::State &state) {
    const auto in = random_values(conv_in(), 1), w = random_values(conv_w(), 2),
               b = random_values(64, 3);
    std::vector<double> out(conv_out());
    for (auto _ : state) {
        if constexpr (Parallel)
            parallel::conv2d_forward(in, w, b, out, kConv);
        else
            serial::conv2d_forward(in, w, b, out, kConv);
        benchmark::DoNotOptimize(out.data());
    }
}

template <bool Parallel> void BM_ConvBackward(benchmark::State &state) {
    const auto in = random_values(conv_in(), 1), w = random_values(conv_w(), 2),
               g = random_values(conv_out(), 3);
    std::vector<double> gi(conv_in()), gw(conv_w()), gb(64);
    for (auto _ : state) {
        if constexpr (Parallel)
            parallel::conv2d_backward(in, w, g, gi, gw, gb, kConv);
        else
            serial::conv2d_backward(in, w, g, gi, gw, gb, kConv);
        benchmark::DoNotOptimize(gw.data());
    }
}

// First dense layer: 9216 -> 128.
template <bool Parallel> void BM_Dense(benchmark::State &state) {
    const auto in = random_values(9216, 1), w = random_values(9216u * 128u, 2),
               b = random_values(128, 3), g = random_values(128, 4);
    std::vector<double> out(128), gi(9216), gw(9216u * 128u), gb(128);
    for (auto _ : state) {
        if constexpr (Parallel) {
            parallel::dense_forward(in, w, b, out);
            parallel::dense_backward(in, w, g, gi, gw, gb);
        } else {
            serial::dense_forward(in, w, b, out);
            serial::dense_backward(in, w, g, gi, gw, gb);
        }
        benchmark::DoNotOptimize(gw.data());
    }
}

template <bool Parallel> void BM_Moments(benchmark::State &state) {
    const auto img = random_values(640u * 480u, 1);
    const Region r{0, 0, 640, 480};
    for (auto _ : state) {
        MomentSums s = Parallel ? parallel::moments(img, 640, r) : serial::moments(img, 640, r);
        benchmark::DoNotOptimize(s);
    }
}

template <bool Parallel> void BM_BackProject(benchmark::State &state) {
    const auto img = random_bytes(640u * 480u, 1);
    const auto bins = random_values(32, 2);
    std::vector<double> out(img.size());
    for (auto _ : state) {
        if constexpr (Parallel)
            parallel::back_project(img, bins, out);
        else
            serial::back_project(img, bins, out);
        benchmark::DoNotOptimize(out.data());
    }
}

} // namespace

BENCHMARK(BM_ConvForward<false>)->Name("conv_forward/serial");
BENCHMARK(BM_ConvForward<true>)->Name("conv_forward/parallel");
BENCHMARK(BM_ConvBackward<false>)->Name("conv_backward/serial");
BENCHMARK(BM_ConvBackward<true>)->Name("conv_backward/parallel");
BENCHMARK(BM_Dense<false>)->Name("dense/serial");
BENCHMARK(BM_Dense<true>)->Name("dense/parallel");
BENCHMARK(BM_Moments<false>)->Name("moments/serial");
BENCHMARK(BM_Moments<true>)->Name("moments/parallel");
BENCHMARK(BM_BackProject<false>)->Name("back_project/serial");
BENCHMARK(BM_BackProject<true>)->Name("back_project/parallel");

BENCHMARK_MAIN();
