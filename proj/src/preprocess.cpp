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

#include "gesture/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <regex>
#include <string>

#include "gesture/error.hpp"
#include "gesture/imaging.hpp"
#include "gesture/pnm.hpp"

namespace gesture {

std::vector<std::size_t> resample_indices(std::size_t n, std::size_t target) {
    require(n >= 1, ErrorKind::InvalidInput, "resample: empty sequence");
    require(target >= 1, ErrorKind::InvalidInput, "resample: target must be >= 1");
    std::vector<std::size_t> idx(target, 0);
    if (target == 1)
        return idx;
    const std::size_t den = target - 1;
    for (std::size_t k = 0; k < target; ++k)
        idx[k] = (2 * k * (n - 1) + den) / (2 * den);
    return idx;
}

GestureSequence resample_temporal(const GestureSequence &seq, std::size_t target) {
    require(!seq.empty(), ErrorKind::InvalidInput, "resample_temporal: empty sequence");
    GestureSequence out;
    out.reserve(target);
    for (std::size_t i : resample_indices(seq.size(), target))
        out.push_back(seq[i]);
    return out;
}

ImageBuffer downsample_spatial(const ImageBuffer &img, int factor) {
    require(factor >= 1, ErrorKind::InvalidInput, "downsample: factor must be >= 1");
    require(img.width() % factor == 0 && img.height() % factor == 0, ErrorKind::InvalidInput,
            "downsample: " + std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                " is not divisible by " + std::to_string(factor));
    const int ow = img.width() / factor;
    const int oh = img.height() / factor;
    const int area = factor * factor;
    ImageBuffer out(ow, oh, img.channels());
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x)
            for (int c = 0; c < img.channels(); ++c) {
                int sum = 0;
                for (int dy = 0; dy < factor; ++dy)
                    for (int dx = 0; dx < factor; ++dx)
                        sum += img.at(x * factor + dx, y * factor + dy, c);
                out.at(x, y, c) = static_cast<std::uint8_t>((2 * sum + area) / (2 * area));
            }
    return out;
}

RealImage sobel_magnitude(const ImageBuffer &img) {
    require(img.channels() == 1, ErrorKind::InvalidInput, "sobel: 1-channel image");
    require(img.width() >= 3 && img.height() >= 3, ErrorKind::InvalidInput,
            "sobel: image must be at least 3x3");
    const int w = img.width();
    const int h = img.height();
    RealImage out(w, h);
    const auto px = [&](int x, int y) {
        return static_cast<double>(img.at(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1)));
    };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double gx = (px(x + 1, y - 1) + 2 * px(x + 1, y) + px(x + 1, y + 1)) -
                              (px(x - 1, y - 1) + 2 * px(x - 1, y) + px(x - 1, y + 1));
            const double gy = (px(x - 1, y + 1) + 2 * px(x, y + 1) + px(x + 1, y + 1)) -
                              (px(x - 1, y - 1) + 2 * px(x, y - 1) + px(x + 1, y - 1));
            out.at(x, y) = std::sqrt(gx * gx + gy * gy);
        }
    return out;
}

void normalize_channel(std::span<double> values) {
    if (values.empty())
        return;
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values)
        mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : values)
        var += (v - mean) * (v - mean);
    var /= n;
    const double sd = std::sqrt(var);
    if (sd < 1e-12) {
        std::fill(values.begin(), values.end(), 0.0);
        return;
    }
    for (double &v : values)
        v = (v - mean) / sd;
}

Tensor build_volume(const GestureSequence &seq) {
    require(!seq.empty(), ErrorKind::InvalidInput, "build_volume: empty sequence");
    const ImageBuffer &first = seq.front();
    for (const auto &f : seq)
        require(f.same_size(first) && f.channels() == first.channels(), ErrorKind::InvalidInput,
                "build_volume: frames must share dimensions and channels");
    const bool square = first.width() == first.height();
    require(square && (first.width() == 2 * kVolumeSide || first.width() == kVolumeSide),
            ErrorKind::InvalidInput,
            "build_volume: frames must be 56x56 or 28x28, got " + std::to_string(first.width()) +
                "x" + std::to_string(first.height()));

    const GestureSequence frames = resample_temporal(seq, kVolumeFrames);
    std::vector<ImageBuffer> small(frames.size());
    const auto count = static_cast<long long>(frames.size());
#pragma omp parallel for schedule(static)
    for (long long t = 0; t < count; ++t) {
        const auto &f = frames[static_cast<std::size_t>(t)];
        ImageBuffer gray = f.channels() == 3 ? grayscale(f) : f;
        small[static_cast<std::size_t>(t)] =
            gray.width() == kVolumeSide ? std::move(gray) : downsample_spatial(gray, 2);
    }

    const std::size_t side = kVolumeSide;
    const std::size_t plane = side * side;
    Tensor volume({kVolumeFrames, side, side, static_cast<std::size_t>(kVolumeChannels)});
    auto v = volume.data();
#pragma omp parallel for schedule(static)
    for (long long t = 0; t < count; ++t) {
        const auto ti = static_cast<std::size_t>(t);
        const RealImage grad = sobel_magnitude(small[ti]);
        const auto cur = small[ti].data();
        const auto prev = small[ti == 0 ? 0 : ti - 1].data();
        for (std::size_t p = 0; p < plane; ++p) {
            double *cell = &v[(ti * plane + p) * kVolumeChannels];
            cell[0] = cur[p];
            cell[1] = grad.data()[p];
            cell[2] = std::abs(static_cast<double>(cur[p]) - static_cast<double>(prev[p]));
        }
    }

    std::vector<double> channel(kVolumeFrames * plane);
    for (std::size_t c = 0; c < kVolumeChannels; ++c) {
        for (std::size_t i = 0; i < channel.size(); ++i)
            channel[i] = v[i * kVolumeChannels + c];
        normalize_channel(channel);
        for (std::size_t i = 0; i < channel.size(); ++i)
            v[i * kVolumeChannels + c] = channel[i];
    }
    return volume;
}

GestureSequence load_frame_directory(const std::filesystem::path &dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(dir, ec))
        fail(ErrorKind::Io, "frame directory not found: " + dir.string());
    static const std::regex pattern(R"(frame_\d+\.(pgm|ppm))");
    std::vector<fs::path> paths;
    for (const auto &entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && std::regex_match(entry.path().filename().string(), pattern))
            paths.push_back(entry.path());
    require(!paths.empty(), ErrorKind::Io, "no frame_NNNN.pgm/.ppm files in " + dir.string());
    std::sort(paths.begin(), paths.end());

    GestureSequence frames;
    frames.reserve(paths.size());
    for (const auto &p : paths)
        frames.push_back(pnm::read(p));
    for (const auto &f : frames)
        require(f.same_size(frames.front()) && f.channels() == frames.front().channels(),
                ErrorKind::InvalidInput, "frames in " + dir.string() + " differ in size");
    return frames;
}

} // namespace gesture
