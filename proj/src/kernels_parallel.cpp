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

#include <cassert>
#include <vector>

#include <omp.h>

#include "kernels_rows.hpp"

namespace gesture::kernels::parallel {

namespace {

// Row partials are reduced serially in row order so the sum matches serial.
template <typename T>
MomentSums moments_impl(std::span<const T> map, int width, const Region &region) {
    const int rows_n = region.y1 - region.y0;
    if (rows_n <= 0)
        return {};
    std::vector<MomentSums> partial(static_cast<std::size_t>(rows_n));
#pragma omp parallel for schedule(static)
    for (int r = 0; r < rows_n; ++r)
        partial[static_cast<std::size_t>(r)] =
            rows::moment_row(map.data(), width, region.x0, region.x1, region.y0 + r);
    MomentSums total;
    for (const auto &p : partial)
        rows::add_into(total, p);
    return total;
}

} // namespace

void conv2d_forward(std::span<const double> input, std::span<const double> kernels,
                    std::span<const double> bias, std::span<double> output, const ConvDims &dims) {
    assert(output.size() == static_cast<std::size_t>(dims.out_height()) * dims.out_width() *
                                dims.out_channels);
    const int oh = dims.out_height();
#pragma omp parallel for schedule(static)
    for (int oy = 0; oy < oh; ++oy)
        rows::conv_forward_row(input.data(), kernels.data(), bias.data(), output.data(), dims, oy);
}

void conv2d_backward(std::span<const double> input, std::span<const double> kernels,
                     std::span<const double> grad_output, std::span<double> grad_input,
                     std::span<double> grad_kernels, std::span<double> grad_bias,
                     const ConvDims &dims) {
    const int positions = dims.out_height() * dims.out_width();
    const int cout = dims.out_channels;
#pragma omp parallel for schedule(static)
    for (int co = 0; co < cout; ++co)
        for (int p = 0; p < positions; ++p)
            grad_bias[co] += grad_output[static_cast<std::size_t>(p) * cout + co];

    const int kernel_rows = dims.kernel * dims.kernel * dims.in_channels;
#pragma omp parallel for schedule(static)
    for (int r = 0; r < kernel_rows; ++r)
        rows::conv_weight_grad_row(input.data(), grad_output.data(), grad_kernels.data(), dims, r);

    if (!grad_input.empty()) {
        const int h = dims.height;
#pragma omp parallel for schedule(static)
        for (int iy = 0; iy < h; ++iy)
            rows::conv_input_grad_row(kernels.data(), grad_output.data(), grad_input.data(), dims,
                                      iy);
    }
}

void dense_forward(std::span<const double> input, std::span<const double> weights,
                   std::span<const double> bias, std::span<double> output) {
    const std::size_t n = input.size();
    const std::size_t m = output.size();
    assert(weights.size() == n * m);
#pragma omp parallel
    {
        const auto threads = static_cast<std::size_t>(omp_get_num_threads());
        const auto t = static_cast<std::size_t>(omp_get_thread_num());
        const std::size_t chunk = (m + threads - 1) / threads;
        const std::size_t m0 = std::min(m, t * chunk);
        const std::size_t m1 = std::min(m, m0 + chunk);
        if (m0 < m1)
            rows::dense_forward_cols(input.data(), weights.data(), bias.data(), output.data(), n,
                                     m, m0, m1);
    }
}

void dense_backward(std::span<const double> input, std::span<const double> weights,
                    std::span<const double> grad_output, std::span<double> grad_input,
                    std::span<double> grad_weights, std::span<double> grad_bias) {
    const std::size_t n = input.size();
    const std::size_t m = grad_output.size();
    for (std::size_t j = 0; j < m; ++j)
        grad_bias[j] += grad_output[j];
    double *gi = grad_input.empty() ? nullptr : grad_input.data();
    const auto rows_n = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < rows_n; ++i)
        rows::dense_backward_row(input.data(), weights.data(), grad_output.data(), gi,
                                 grad_weights.data(), m, static_cast<std::size_t>(i));
}

MomentSums moments(std::span<const double> map, int width, const Region &region) {
    return moments_impl(map, width, region);
}

MomentSums moments(std::span<const std::uint8_t> img, int width, const Region &region) {
    return moments_impl(img, width, region);
}

void back_project(std::span<const std::uint8_t> img, std::span<const double> bin_weights,
                  std::span<double> output) {
    const std::size_t bins = bin_weights.size();
    const auto n = static_cast<long long>(img.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i)
        output[static_cast<std::size_t>(i)] =
            bin_weights[rows::bin_of(img[static_cast<std::size_t>(i)], bins)];
}

} // namespace gesture::kernels::parallel
