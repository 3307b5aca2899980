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

#include "gesture/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace gesture::synth {

namespace {

struct Vec {
    double x;
    double y;
};

using Stroke = std::vector<Vec>;

Stroke arc(Vec c, double rx, double ry, double from, double to, int steps) {
    Stroke s;
    for (int i = 0; i <= steps; ++i) {
        const double t = from + (to - from) * i / steps;
        s.push_back({c.x + rx * std::cos(t), c.y + ry * std::sin(t)});
    }
    return s;
}

// Glyph strokes in a unit box, y pointing down.
const std::array<std::vector<Stroke>, 10> &glyphs() {
    constexpr double pi = std::numbers::pi;
    static const std::array<std::vector<Stroke>, 10> g = {{
        {arc({0.5, 0.5}, 0.38, 0.48, 0, 2 * pi, 20)},
        {{{0.3, 0.2}, {0.55, 0.0}, {0.55, 1.0}}},
        {{{0.1, 0.25}, {0.3, 0.04}, {0.7, 0.04}, {0.9, 0.25}, {0.85, 0.45}, {0.1, 1.0}, {0.92, 1.0}}},
        {{{0.1, 0.04}, {0.9, 0.04}, {0.5, 0.42}, {0.88, 0.62}, {0.85, 0.9}, {0.5, 1.0}, {0.1, 0.9}}},
        {{{0.7, 1.0}, {0.7, 0.0}, {0.05, 0.7}, {0.95, 0.7}}},
        {{{0.9, 0.0}, {0.15, 0.0}, {0.1, 0.45}, {0.6, 0.4}, {0.9, 0.62}, {0.85, 0.9}, {0.5, 1.0},
          {0.1, 0.9}}},
        {{{0.8, 0.04}, {0.4, 0.1}, {0.15, 0.5}, {0.15, 0.8}, {0.4, 1.0}, {0.75, 0.95}, {0.85, 0.7},
          {0.6, 0.5}, {0.3, 0.55}, {0.15, 0.7}}},
        {{{0.1, 0.0}, {0.9, 0.0}, {0.4, 1.0}}},
        {arc({0.5, 0.26}, 0.3, 0.24, 0, 2 * pi, 16), arc({0.5, 0.73}, 0.36, 0.27, 0, 2 * pi, 16)},
        {arc({0.5, 0.3}, 0.34, 0.3, 0, 2 * pi, 16), {{0.84, 0.3}, {0.72, 1.0}}},
    }};
    return g;
}

double segment_distance(Vec p, Vec a, Vec b) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double ex = a.x + t * dx - p.x, ey = a.y + t * dy - p.y;
    return std::sqrt(ex * ex + ey * ey);
}

ImageBuffer render_digit(int label, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> scale_d(0.8, 1.05);
    std::uniform_real_distribution<double> angle_d(-0.2, 0.2);
    std::uniform_real_distribution<double> shift_d(-2.0, 2.0);
    std::uniform_real_distribution<double> width_d(1.1, 2.0);
    std::uniform_real_distribution<double> slant_d(-0.15, 0.15);
    std::normal_distribution<double> noise(0.0, 8.0);

    const double scale = scale_d(rng);
    const double angle = angle_d(rng);
    const double slant = slant_d(rng);
    const double sx = shift_d(rng), sy = shift_d(rng);
    const double half_width = width_d(rng) / 2.0;
    const double box_w = 14.0 * scale, box_h = 20.0 * scale;
    const double ca = std::cos(angle), sa = std::sin(angle);

    std::vector<std::pair<Vec, Vec>> segments;
    for (const Stroke &s : glyphs()[static_cast<std::size_t>(label)]) {
        std::vector<Vec> pts;
        for (Vec u : s) {
            double x = (u.x - 0.5) * box_w + slant * (u.y - 0.5) * box_h;
            double y = (u.y - 0.5) * box_h;
            pts.push_back({13.5 + sx + ca * x - sa * y, 13.5 + sy + sa * x + ca * y});
        }
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            segments.emplace_back(pts[i], pts[i + 1]);
    }

    ImageBuffer img(28, 28, 1);
    for (int y = 0; y < 28; ++y)
        for (int x = 0; x < 28; ++x) {
            double d = 1e9;
            for (const auto &[a, b] : segments)
                d = std::min(d, segment_distance({double(x), double(y)}, a, b));
            const double ink = std::clamp(1.0 - (d - half_width), 0.0, 1.0);
            const double v = 255.0 * ink + (ink > 0 ? noise(rng) : 0.0);
            img.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
        }
    return img;
}

} // namespace

DigitDataset digits(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> labels(count);
    for (std::size_t i = 0; i < count; ++i)
        labels[i] = static_cast<int>(i % 10);
    std::shuffle(labels.begin(), labels.end(), rng);
    DigitDataset d;
    d.images.reserve(count);
    for (int label : labels)
        d.images.push_back(render_digit(label, rng));
    d.labels = std::move(labels);
    return d;
}

BlobScene blob_scene(const BlobSceneConfig &config, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> background(0, 80);
    std::uniform_int_distribution<int> foreground(180, 255);

    const double span_x = config.vx * (config.frames - 1);
    const double span_y = config.vy * (config.frames - 1);
    const double x0 = (config.width - 1) / 2.0 - span_x / 2.0;
    const double y0 = (config.height - 1) / 2.0 - span_y / 2.0;

    BlobScene scene;
    const double r2 = config.radius * config.radius;
    for (int t = 0; t < config.frames; ++t) {
        const double cx = x0 + config.vx * t;
        const double cy = y0 + config.vy * t;
        ImageBuffer f(config.width, config.height, 1);
        for (int y = 0; y < config.height; ++y)
            for (int x = 0; x < config.width; ++x) {
                const double dx = x - cx, dy = y - cy;
                f.at(x, y) = static_cast<std::uint8_t>(dx * dx + dy * dy <= r2 ? foreground(rng)
                                                                               : background(rng));
            }
        scene.frames.push_back(std::move(f));
        scene.true_cx.push_back(cx);
        scene.true_cy.push_back(cy);
    }
    const int side = std::max(1, static_cast<int>(std::floor(config.radius * std::numbers::sqrt2)));
    scene.initial_roi = {static_cast<int>(std::lround(x0 - (side - 1) / 2.0)),
                         static_cast<int>(std::lround(y0 - (side - 1) / 2.0)), side, side};
    return scene;
}

} // namespace gesture::synth
