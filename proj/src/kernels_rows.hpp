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

#ifndef GESTURE_KERNELS_ROWS_HPP
#define GESTURE_KERNELS_ROWS_HPP

// Per-row bodies shared by the serial and parallel kernels. Each function
// writes a disjoint slice of the output so callers may run rows concurrently.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gesture/kernels.hpp"

namespace gesture::kernels::rows {

inline void conv_forward_row(const double *input, const double *kernels, const double *bias,
                             double *output, const ConvDims &d, int oy) {
    const int ow = d.out_width();
    const int cin = d.in_channels;
    const int cout = d.out_channels;
    for (int ox = 0; ox < ow; ++ox) {
        double *acc = output + (static_cast<std::size_t>(oy) * ow + ox) * cout;
        for (int co = 0; co < cout; ++co)
            acc[co] = bias[co];
        for (int ky = 0; ky < d.kernel; ++ky) {
            for (int kx = 0; kx < d.kernel; ++kx) {
                const double *px =
                    input + (static_cast<std::size_t>(oy + ky) * d.width + (ox + kx)) * cin;
                const double *kw =
                    kernels + static_cast<std::size_t>((ky * d.kernel + kx) * cin) * cout;
                for (int ci = 0; ci < cin; ++ci) {
                    const double v = px[ci];
                    const double *k = kw + static_cast<std::size_t>(ci) * cout;
                    for (int co = 0; co < cout; ++co)
                        acc[co] += v * k[co];
                }
            }
        }
    }
}

// One row r = (ky*K + kx)*cin + ci of the kernel gradient, summed over every
// output position in raster order.
inline void conv_weight_grad_row(const double *input, const double *grad_output,
                                 double *grad_kernels, const ConvDims &d, int r) {
    const int cin = d.in_channels;
    const int cout = d.out_channels;
    const int ci = r % cin;
    const int kx = (r / cin) % d.kernel;
    const int ky = r / (cin * d.kernel);
    double *gk = grad_kernels + static_cast<std::size_t>(r) * cout;
    const int oh = d.out_height();
    const int ow = d.out_width();
    for (int oy = 0; oy < oh; ++oy) {
        for (int ox = 0; ox < ow; ++ox) {
            const double v =
                input[(static_cast<std::size_t>(oy + ky) * d.width + (ox + kx)) * cin + ci];
            if (v == 0.0)
                continue;
            const double *g = grad_output + (static_cast<std::size_t>(oy) * ow + ox) * cout;
            for (int co = 0; co < cout; ++co)
                gk[co] += v * g[co];
        }
    }
}

// Gather form of the input gradient for input row iy.
inline void conv_input_grad_row(const double *kernels, const double *grad_output,
                                double *grad_input, const ConvDims &d, int iy) {
    const int cin = d.in_channels;
    const int cout = d.out_channels;
    const int oh = d.out_height();
    const int ow = d.out_width();
    for (int ix = 0; ix < d.width; ++ix) {
        double *gi = grad_input + (static_cast<std::size_t>(iy) * d.width + ix) * cin;
        for (int ci = 0; ci < cin; ++ci)
            gi[ci] = 0.0;
        for (int ky = 0; ky < d.kernel; ++ky) {
            const int oy = iy - ky;
            if (oy < 0 || oy >= oh)
                continue;
            for (int kx = 0; kx < d.kernel; ++kx) {
                const int ox = ix - kx;
                if (ox < 0 || ox >= ow)
                    continue;
                const double *g = grad_output + (static_cast<std::size_t>(oy) * ow + ox) * cout;
                const double *kw =
                    kernels + static_cast<std::size_t>((ky * d.kernel + kx) * cin) * cout;
                for (int ci = 0; ci < cin; ++ci) {
                    const double *k = kw + static_cast<std::size_t>(ci) * cout;
                    double s = 0.0;
                    for (int co = 0; co < cout; ++co)
                        s += k[co] * g[co];
                    gi[ci] += s;
                }
            }
        }
    }
}

// Output columns [m0, m1) of a dense layer.
inline void dense_forward_cols(const double *input, const double *weights, const double *bias,
                               double *output, std::size_t n, std::size_t m, std::size_t m0,
                               std::size_t m1) {
    for (std::size_t j = m0; j < m1; ++j)
        output[j] = bias[j];
    for (std::size_t i = 0; i < n; ++i) {
        const double v = input[i];
        if (v == 0.0)
            continue;
        const double *w = weights + i * m;
        for (std::size_t j = m0; j < m1; ++j)
            output[j] += v * w[j];
    }
}

inline void dense_backward_row(const double *input, const double *weights,
                               const double *grad_output, double *grad_input,
                               double *grad_weights, std::size_t m, std::size_t i) {
    const double *w = weights + i * m;
    if (grad_input != nullptr) {
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            s += w[j] * grad_output[j];
        grad_input[i] = s;
    }
    const double v = input[i];
    if (v == 0.0)
        return;
    double *gw = grad_weights + i * m;
    for (std::size_t j = 0; j < m; ++j)
        gw[j] += v * grad_output[j];
}

template <typename T>
MomentSums moment_row(const T *map, int width, int x0, int x1, int y) {
    MomentSums s;
    const double fy = y;
    const T *row = map + static_cast<std::size_t>(y) * width;
    for (int x = x0; x < x1; ++x) {
        const double v = static_cast<double>(row[x]);
        if (v == 0.0)
            continue;
        const double fx = x;
        s.m00 += v;
        s.m10 += fx * v;
        s.m01 += fy * v;
        s.m20 += fx * fx * v;
        s.m11 += fx * fy * v;
        s.m02 += fy * fy * v;
    }
    return s;
}

inline void add_into(MomentSums &acc, const MomentSums &r) {
    acc.m00 += r.m00;
    acc.m10 += r.m10;
    acc.m01 += r.m01;
    acc.m20 += r.m20;
    acc.m11 += r.m11;
    acc.m02 += r.m02;
}

inline std::size_t bin_of(std::uint8_t v, std::size_t bins) {
    return static_cast<std::size_t>(v) * bins / 256;
}

} // namespace gesture::kernels::rows

#endif
