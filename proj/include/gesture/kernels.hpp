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

#ifndef GESTURE_KERNELS_HPP
#define GESTURE_KERNELS_HPP

#include <cstdint>
#include <span>

/**
 * @file
 *
 * Hot inner loops of the library, in two flavours with identical signatures:
 *
 *  - kernels::serial   plain loops, kept as the reference for tests;
 *  - kernels::parallel OpenMP work-sharing over independent output rows.
 *
 * Both flavours accumulate every output element in the same order, so their
 * results are bit-identical for any thread count. Training determinism relies
 * on this.
 *
 * Layouts: activations are HWC row-major, conv kernels are
 * [ky][kx][cin][cout], dense weights are [in][out].
 */

namespace gesture::kernels {

struct ConvDims {
    int height = 0;
    int width = 0;
    int in_channels = 0;
    int kernel = 0;
    int out_channels = 0;

    int out_height() const noexcept { return height - kernel + 1; }
    int out_width() const noexcept { return width - kernel + 1; }
};

/// Raw moments up to order two accumulated over a rectangular region.
struct MomentSums {
    double m00 = 0.0;
    double m10 = 0.0;
    double m01 = 0.0;
    double m20 = 0.0;
    double m11 = 0.0;
    double m02 = 0.0;
};

/// Half-open pixel rectangle [x0, x1) x [y0, y1), already clipped to the image.
struct Region {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;
};

#define GESTURE_KERNEL_DECLS                                                                     \
    void conv2d_forward(std::span<const double> input, std::span<const double> kernels,          \
                        std::span<const double> bias, std::span<double> output,                  \
                        const ConvDims &dims);                                                   \
    /* grad_input may be empty (first layer); weight/bias grads accumulate. */                  \
    void conv2d_backward(std::span<const double> input, std::span<const double> kernels,         \
                         std::span<const double> grad_output, std::span<double> grad_input,      \
                         std::span<double> grad_kernels, std::span<double> grad_bias,            \
                         const ConvDims &dims);                                                  \
    void dense_forward(std::span<const double> input, std::span<const double> weights,           \
                       std::span<const double> bias, std::span<double> output);                  \
    void dense_backward(std::span<const double> input, std::span<const double> weights,          \
                        std::span<const double> grad_output, std::span<double> grad_input,       \
                        std::span<double> grad_weights, std::span<double> grad_bias);            \
    MomentSums moments(std::span<const double> map, int width, const Region &region);            \
    MomentSums moments(std::span<const std::uint8_t> img, int width, const Region &region);      \
    void back_project(std::span<const std::uint8_t> img, std::span<const double> bin_weights,    \
                      std::span<double> output);

namespace serial {
GESTURE_KERNEL_DECLS
} // namespace serial

namespace parallel {
GESTURE_KERNEL_DECLS
} // namespace parallel

#undef GESTURE_KERNEL_DECLS

} // namespace gesture::kernels

#endif
