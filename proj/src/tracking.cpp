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

#include "gesture/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "gesture/error.hpp"

namespace gesture {

namespace {

int round_half_up(double v) { return static_cast<int>(std::floor(v + 0.5)); }

kernels::Region full_region(int width, int height) { return {0, 0, width, height}; }

bool region_empty(const kernels::Region &r) { return r.x1 <= r.x0 || r.y1 <= r.y0; }

double pick(const kernels::MomentSums &s, int i, int j) {
    require(i >= 0 && j >= 0 && i + j <= 2, ErrorKind::InvalidInput,
            "moment order (" + std::to_string(i) + "," + std::to_string(j) +
                ") outside supported range i + j <= 2");
    if (i == 0 && j == 0)
        return s.m00;
    if (i == 1 && j == 0)
        return s.m10;
    if (i == 0 && j == 1)
        return s.m01;
    if (i == 2)
        return s.m20;
    if (j == 2)
        return s.m02;
    return s.m11;
}

kernels::MomentSums sums(const ImageBuffer &img, const kernels::Region &region) {
    require(img.channels() == 1, ErrorKind::InvalidInput, "moments need a 1-channel image");
    return kernels::parallel::moments(img.data(), img.width(), region);
}

kernels::MomentSums sums(const RealImage &img, const kernels::Region &region) {
    return kernels::parallel::moments(img.data(), img.width(), region);
}

template <typename Image>
kernels::Region region_for(const Image &img, const std::optional<Window> &window) {
    if (!window)
        return full_region(img.width(), img.height());
    return clip(*window, img.width(), img.height());
}

MomentSet complete(const kernels::MomentSums &s) {
    require(s.m00 > 0.0, ErrorKind::EmptyRegion, "central moments undefined: M00 = 0");
    MomentSet m;
    m.m00 = s.m00;
    m.m10 = s.m10;
    m.m01 = s.m01;
    m.m20 = s.m20;
    m.m11 = s.m11;
    m.m02 = s.m02;
    const double cx = s.m10 / s.m00;
    const double cy = s.m01 / s.m00;
    m.mu00 = s.m00;
    m.mu10 = s.m10 - cx * s.m00;
    m.mu01 = s.m01 - cy * s.m00;
    m.mu20 = s.m20 - cx * s.m10;
    m.mu11 = s.m11 - cx * s.m01;
    m.mu02 = s.m02 - cy * s.m01;
    return m;
}

// Byte images have integer raw moments, exact in double below 2^53. Their
// central moments come from an exact integer numerator and a single division,
// so they are correctly rounded whenever that numerator is below 2^53.
MomentSet complete_exact(const kernels::MomentSums &s) {
    MomentSet m = complete(s);
    __extension__ typedef __int128 wide;
    const auto w = [](double v) { return static_cast<wide>(v); };
    const wide m00 = w(s.m00), m10 = w(s.m10), m01 = w(s.m01);
    const auto div = [&](wide num) { return static_cast<double>(num) / s.m00; };
    m.mu10 = 0.0;
    m.mu01 = 0.0;
    m.mu20 = div(m00 * w(s.m20) - m10 * m10);
    m.mu11 = div(m00 * w(s.m11) - m10 * m01);
    m.mu02 = div(m00 * w(s.m02) - m01 * m01);
    return m;
}

double pick_central(const MomentSet &m, int p, int q) {
    require(p >= 0 && q >= 0 && p + q <= 2, ErrorKind::InvalidInput,
            "central moment order (" + std::to_string(p) + "," + std::to_string(q) +
                ") outside supported range p + q <= 2");
    if (p == 0 && q == 0)
        return m.mu00;
    if (p == 1 && q == 0)
        return m.mu10;
    if (p == 0 && q == 1)
        return m.mu01;
    if (p == 2)
        return m.mu20;
    if (q == 2)
        return m.mu02;
    return m.mu11;
}

template <typename Image> std::pair<double, double> centroid_of(const Image &img) {
    const auto s = sums(img, full_region(img.width(), img.height()));
    require(s.m00 > 0.0, ErrorKind::EmptyRegion, "centroid undefined: M00 = 0");
    return {s.m10 / s.m00, s.m01 / s.m00};
}

int place(double center, int extent, int limit) {
    const int origin = round_half_up(center - (extent - 1) / 2.0);
    if (extent >= limit)
        return 0;
    return std::clamp(origin, 0, limit - extent);
}

} // namespace

kernels::Region clip(const Window &window, int width, int height) noexcept {
    kernels::Region r;
    r.x0 = std::max(window.x, 0);
    r.y0 = std::max(window.y, 0);
    r.x1 = std::min(window.x + window.w, width);
    r.y1 = std::min(window.y + window.h, height);
    if (r.x1 < r.x0)
        r.x1 = r.x0;
    if (r.y1 < r.y0)
        r.y1 = r.y0;
    return r;
}

double raw_moment(const ImageBuffer &img, int i, int j, std::optional<Window> window) {
    return pick(sums(img, region_for(img, window)), i, j);
}

double raw_moment(const RealImage &img, int i, int j, std::optional<Window> window) {
    return pick(sums(img, region_for(img, window)), i, j);
}

MomentSet moments(const ImageBuffer &img) {
    return complete_exact(sums(img, full_region(img.width(), img.height())));
}

MomentSet moments(const RealImage &img) {
    return complete(sums(img, full_region(img.width(), img.height())));
}

double central_moment(const ImageBuffer &img, int p, int q) {
    return pick_central(moments(img), p, q);
}

double central_moment(const RealImage &img, int p, int q) {
    return pick_central(moments(img), p, q);
}

std::pair<double, double> centroid(const ImageBuffer &img) { return centroid_of(img); }

std::pair<double, double> centroid(const RealImage &img) { return centroid_of(img); }

Histogram build_histogram(const ImageBuffer &img, const Window &roi, int bin_count) {
    require(img.channels() == 1, ErrorKind::InvalidInput, "build_histogram: 1-channel image");
    require(bin_count >= 1 && bin_count <= 256, ErrorKind::InvalidInput,
            "build_histogram: bin_count must be in [1, 256]");
    const auto r = clip(roi, img.width(), img.height());
    require(!region_empty(r), ErrorKind::EmptyRegion,
            "build_histogram: ROI does not intersect the image");

    Histogram hist;
    hist.bins.assign(static_cast<std::size_t>(bin_count), 0.0);
    for (int y = r.y0; y < r.y1; ++y)
        for (int x = r.x0; x < r.x1; ++x)
            hist.bins[static_cast<std::size_t>(img.at(x, y)) * bin_count / 256] += 1.0;
    const double peak = *std::max_element(hist.bins.begin(), hist.bins.end());
    for (double &b : hist.bins)
        b /= peak;
    return hist;
}

RealImage back_project(const ImageBuffer &img, const Histogram &hist) {
    require(img.channels() == 1, ErrorKind::InvalidInput, "back_project: 1-channel image");
    require(!hist.bins.empty(), ErrorKind::InvalidInput, "back_project: empty histogram");
    RealImage out(img.width(), img.height());
    kernels::parallel::back_project(img.data(), hist.bins, out.data());
    return out;
}

TrackState mean_shift(const RealImage &prob, const Window &start, int max_iter, double eps) {
    require(max_iter >= 1, ErrorKind::InvalidInput, "mean_shift: max_iter must be >= 1");
    require(eps > 0.0, ErrorKind::InvalidInput, "mean_shift: eps must be positive");
    require(start.w >= 1 && start.h >= 1, ErrorKind::InvalidInput,
            "mean_shift: window extent must be positive");
    require(!region_empty(clip(start, prob.width(), prob.height())), ErrorKind::InvalidInput,
            "mean_shift: start window does not intersect the image");

    TrackState state;
    state.window = start;
    for (int it = 1; it <= max_iter; ++it) {
        const auto region = clip(state.window, prob.width(), prob.height());
        const auto s = region_empty(region) ? kernels::MomentSums{} : sums(prob, region);
        if (!(s.m00 > 0.0))
            fail(ErrorKind::LostTrack,
                 "mean_shift: zero probability mass in window at iteration " + std::to_string(it));
        const double cx = s.m10 / s.m00;
        const double cy = s.m01 / s.m00;
        const double shift =
            std::hypot(cx - state.window.center_x(), cy - state.window.center_y());

        state.window.x = place(cx, state.window.w, prob.width());
        state.window.y = place(cy, state.window.h, prob.height());
        state.cx = cx;
        state.cy = cy;
        state.iterations = it;
        state.shifts.push_back(shift);
        if (shift < eps) {
            state.converged = true;
            break;
        }
    }
    return state;
}

TrackState camshift_step(const RealImage &prob, const Window &window, const TrackConfig &config) {
    TrackState state = mean_shift(prob, window, config.max_iter, config.eps);

    const auto region = clip(state.window, prob.width(), prob.height());
    const double mass = region_empty(region) ? 0.0 : sums(prob, region).m00;
    const double peak = prob.max_value();
    if (!(mass > 0.0) || !(peak > 0.0))
        fail(ErrorKind::LostTrack, "camshift: zero mass in converged window");

    const double side = 2.0 * std::sqrt(mass / peak);
    const double aspect = static_cast<double>(window.w) / static_cast<double>(window.h);
    const auto fit = [&](double extent, int limit) {
        const double lo = std::min(config.min_window, static_cast<double>(limit));
        return round_half_up(std::clamp(extent, lo, static_cast<double>(limit)));
    };
    const int w = fit(side * std::sqrt(aspect), prob.width());
    const int h = fit(side / std::sqrt(aspect), prob.height());

    state.window = {place(state.cx, w, prob.width()), place(state.cy, h, prob.height()), w, h};
    return state;
}

std::vector<TrackState> track_sequence(const std::vector<ImageBuffer> &frames,
                                       const Window &initial_roi, const TrackConfig &config) {
    require(!frames.empty(), ErrorKind::InvalidInput, "track_sequence: no frames");
    for (const auto &f : frames) {
        require(f.channels() == 1, ErrorKind::InvalidInput,
                "track_sequence: frames must be grayscale");
        require(f.same_size(frames.front()), ErrorKind::InvalidInput,
                "track_sequence: frames differ in size");
    }
    require(initial_roi.w >= 1 && initial_roi.h >= 1, ErrorKind::InvalidInput,
            "track_sequence: ROI extent must be positive");

    const Histogram hist = build_histogram(frames.front(), initial_roi, config.bins);

    std::vector<TrackState> states;
    states.reserve(frames.size());
    Window window = initial_roi;
    double cx = initial_roi.center_x();
    double cy = initial_roi.center_y();
    for (const auto &frame : frames) {
        const RealImage prob = back_project(frame, hist);
        try {
            TrackState s = camshift_step(prob, window, config);
            window = s.window;
            cx = s.cx;
            cy = s.cy;
            states.push_back(std::move(s));
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::LostTrack)
                throw;
            TrackState s;
            s.window = window;
            s.cx = std::clamp(cx, 0.0, frame.width() - 1.0);
            s.cy = std::clamp(cy, 0.0, frame.height() - 1.0);
            s.lost = true;
            states.push_back(std::move(s));
        }
    }
    return states;
}

void write_track_csv(std::ostream &out, const std::vector<TrackState> &states) {
    out << "frame,cx,cy,wx,wy,ww,wh,converged,lost\n";
    char line[160];
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto &s = states[i];
        std::snprintf(line, sizeof line, "%zu,%.3f,%.3f,%d,%d,%d,%d,%d,%d\n", i, s.cx, s.cy,
                      s.window.x, s.window.y, s.window.w, s.window.h, s.converged ? 1 : 0,
                      s.lost ? 1 : 0);
        out << line;
    }
}

} // namespace gesture
