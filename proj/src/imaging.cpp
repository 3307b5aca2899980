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

#include "gesture/imaging.hpp"

#include <algorithm>
#include <cstdlib>

#include "gesture/error.hpp"

namespace gesture {

namespace {

void require_channels(const ImageBuffer &img, int channels, const char *op) {
    require(img.channels() == channels, ErrorKind::InvalidInput,
            std::string(op) + ": expected " + std::to_string(channels) + "-channel image, got " +
                std::to_string(img.channels()));
}

void require_same_size(const ImageBuffer &a, const ImageBuffer &b, const char *op) {
    require(a.same_size(b), ErrorKind::InvalidInput,
            std::string(op) + ": dimension mismatch " + std::to_string(a.width()) + "x" +
                std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                std::to_string(b.height()));
}

// round(sum / 3) with halves going up; thirds never land on .5 exactly.
std::uint8_t mean3(int sum) { return static_cast<std::uint8_t>((2 * sum + 3) / 6); }

long long cross(const Point &o, const Point &a, const Point &b) {
    return static_cast<long long>(a.x - o.x) * (b.y - o.y) -
           static_cast<long long>(a.y - o.y) * (b.x - o.x);
}

} // namespace

ImageBuffer grayscale(const ImageBuffer &src) {
    require_channels(src, 3, "grayscale");
    ImageBuffer out(src.width(), src.height(), 1);
    const auto in = src.data();
    auto dst = out.data();
    for (std::size_t i = 0; i < dst.size(); ++i)
        dst[i] = mean3(in[3 * i] + in[3 * i + 1] + in[3 * i + 2]);
    return out;
}

BinaryMask threshold_binary(const ImageBuffer &src, std::uint8_t threshold,
                            std::uint8_t max_value) {
    require_channels(src, 1, "threshold_binary");
    ImageBuffer out(src.width(), src.height(), 1);
    const auto in = src.data();
    auto dst = out.data();
    for (std::size_t i = 0; i < dst.size(); ++i)
        dst[i] = in[i] > threshold ? max_value : 0;
    return out;
}

BinaryMask color_distance_mask(const ImageBuffer &frame, Rgb key_color, std::uint8_t threshold) {
    require_channels(frame, 3, "color_distance_mask");
    ImageBuffer diff(frame.width(), frame.height(), 3);
    const auto in = frame.data();
    auto d = diff.data();
    const int key[3] = {key_color.r, key_color.g, key_color.b};
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = static_cast<std::uint8_t>(std::abs(static_cast<int>(in[i]) - key[i % 3]));
    return threshold_binary(grayscale(diff), threshold, 255);
}

ImageBuffer replace_background(const ImageBuffer &frame, const ImageBuffer &new_bg,
                               const BinaryMask &mask) {
    require_channels(frame, 3, "replace_background");
    require_channels(new_bg, 3, "replace_background");
    require_channels(mask, 1, "replace_background");
    require_same_size(frame, new_bg, "replace_background");
    require_same_size(frame, mask, "replace_background");

    // (frame AND mask) + (bg AND NOT mask)
    ImageBuffer out(frame.width(), frame.height(), 3);
    const auto fg = frame.data();
    const auto bg = new_bg.data();
    const auto m = mask.data();
    auto dst = out.data();
    for (std::size_t p = 0; p < m.size(); ++p) {
        const auto &src = m[p] != 0 ? fg : bg;
        for (std::size_t c = 0; c < 3; ++c)
            dst[3 * p + c] = src[3 * p + c];
    }
    return out;
}

BinaryMask frame_difference(const ImageBuffer &frame_t, const ImageBuffer &frame_prev,
                            std::uint8_t threshold) {
    require_channels(frame_t, 1, "frame_difference");
    require_channels(frame_prev, 1, "frame_difference");
    require_same_size(frame_t, frame_prev, "frame_difference");
    ImageBuffer diff(frame_t.width(), frame_t.height(), 1);
    const auto a = frame_t.data();
    const auto b = frame_prev.data();
    auto d = diff.data();
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = static_cast<std::uint8_t>(std::abs(static_cast<int>(a[i]) - static_cast<int>(b[i])));
    return threshold_binary(diff, threshold, 255);
}

BinaryMask invert_mask(const BinaryMask &mask) {
    require_channels(mask, 1, "invert_mask");
    ImageBuffer out(mask.width(), mask.height(), 1);
    const auto in = mask.data();
    auto dst = out.data();
    for (std::size_t i = 0; i < dst.size(); ++i)
        dst[i] = in[i] != 0 ? 0 : 255;
    return out;
}

std::size_t count_nonzero(const ImageBuffer &img) {
    return static_cast<std::size_t>(
        std::count_if(img.data().begin(), img.data().end(), [](std::uint8_t v) { return v != 0; }));
}

std::vector<Point> convex_hull(std::vector<Point> points) {
    require(!points.empty(), ErrorKind::EmptyRegion, "convex_hull: no points");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < 3) {
        return points;
    }

    std::vector<Point> hull(2 * points.size());
    std::size_t k = 0;
    for (const Point &p : points) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0)
            --k;
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (auto it = points.rbegin() + 1; it != points.rend(); ++it) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0)
            --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    return hull;
}

std::vector<Point> convex_hull(const BinaryMask &mask) {
    require_channels(mask, 1, "convex_hull");
    // Only the leftmost and rightmost nonzero pixel of each row can be a hull
    // vertex.
    std::vector<Point> extremes;
    for (int y = 0; y < mask.height(); ++y) {
        int first = -1;
        int last = -1;
        for (int x = 0; x < mask.width(); ++x) {
            if (mask.at(x, y) != 0) {
                if (first < 0)
                    first = x;
                last = x;
            }
        }
        if (first >= 0) {
            extremes.push_back({first, y});
            if (last != first)
                extremes.push_back({last, y});
        }
    }
    require(!extremes.empty(), ErrorKind::EmptyRegion, "convex_hull: mask has no nonzero pixels");
    return convex_hull(std::move(extremes));
}

} // namespace gesture
