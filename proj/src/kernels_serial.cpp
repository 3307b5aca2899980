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

#include "kernels_rows.hpp"

namespace gesture::kernels::serial {

void conv2d_forward(std::span<const double> input, std::span<const double> kernels,
                    std::span<const double> bias, std::span<double> output, const ConvDims &dims) {
    assert(output.size() == static_cast<std::size_t>(dims.out_height()) * dims.out_width() *
                                dims.out_channels);
    for (int oy = 0; oy < dims.out_height(); ++oy)
        rows::conv_forward_row(input.data(), kernels.data(), bias.data(), output.data(), dims, oy);
}

void conv2d_backward(std::span<const double> input, std::span<const double> kernels,
                     std::span<const double> grad_output, std::span<double> grad_input,
                     std::span<double> grad_kernels, std::span<double> grad_bias,
                     const ConvDims &dims) {
    const int positions = dims.out_height() * dims.out_width();
    for (int p = 0; p < positions; ++p)
        for (int co = 0; co < dims.out_channels; ++co)
            grad_bias[co] += grad_output[static_cast<std::size_t>(p) * dims.out_channels + co];

    const int kernel_rows = dims.kernel * dims.kernel * dims.in_channels;
    for (int r = 0; r < kernel_rows; ++r)
        rows::conv_weight_grad_row(input.data(), grad_output.data(), grad_kernels.data(), dims, r);

    if (!grad_input.empty())
        for (int iy = 0; iy < dims.height; ++iy)
            rows::conv_input_grad_row(kernels.data(), grad_output.data(), grad_input.data(), dims,
                                      iy);
}

void dense_forward(std::span<const double> input, std::span<const double> weights,
                   std::span<const double> bias, std::span<double> output) {
    const std::size_t n = input.size();
    const std::size_t m = output.size();
    assert(weights.size() == n * m);
    rows::dense_forward_cols(input.data(), weights.data(), bias.data(), output.data(), n, m, 0, m);
}

void dense_backward(std::span<const double> input, std::span<const double> weights,
                    std::span<const double> grad_output, std::span<double> grad_input,
                    std::span<double> grad_weights, std::span<double> grad_bias) {
    const std::size_t n = input.size();
    const std::size_t m = grad_output.size();
    for (std::size_t j = 0; j < m; ++j)
        grad_bias[j] += grad_output[j];
    double *gi = grad_input.empty() ? nullptr : grad_input.data();
    for (std::size_t i = 0; i < n; ++i)
        rows::dense_backward_row(input.data(), weights.data(), grad_output.data(), gi,
                                 grad_weights.data(), m, i);
}

MomentSums moments(std::span<const double> map, int width, const Region &region) {
    MomentSums total;
    for (int y = region.y0; y < region.y1; ++y)
        rows::add_into(total, rows::moment_row(map.data(), width, region.x0, region.x1, y));
    return total;
}

MomentSums moments(std::span<const std::uint8_t> img, int width, const Region &region) {
    MomentSums total;
    for (int y = region.y0; y < region.y1; ++y)
        rows::add_into(total, rows::moment_row(img.data(), width, region.x0, region.x1, y));
    return total;
}

void back_project(std::span<const std::uint8_t> img, std::span<const double> bin_weights,
                  std::span<double> output) {
    const std::size_t bins = bin_weights.size();
    for (std::size_t i = 0; i < img.size(); ++i)
        output[i] = bin_weights[rows::bin_of(img[i], bins)];
}

} // namespace gesture::kernels::serial
