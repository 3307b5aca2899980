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

#ifndef GESTURE_TRACKING_HPP
#define GESTURE_TRACKING_HPP

#include <optional>
#include <ostream>
#include <vector>

#include "gesture/image.hpp"
#include "gesture/kernels.hpp"

namespace gesture {

/// Search window: top-left corner plus extent, in pixels.
struct Window {
    int x = 0;
    int y = 0;
    int w = 1;
    int h = 1;

    double center_x() const noexcept { return x + (w - 1) / 2.0; }
    double center_y() const noexcept { return y + (h - 1) / 2.0; }

    friend bool operator==(const Window &, const Window &) = default;
};

/// The window clipped to a width x height image; empty when they don't overlap.
kernels::Region clip(const Window &window, int width, int height) noexcept;

struct Histogram {
    std::vector<double> bins;

    int bin_count() const noexcept { return static_cast<int>(bins.size()); }
};

struct TrackState {
    Window window;
    double cx = 0.0;
    double cy = 0.0;
    int iterations = 0;
    bool converged = false;
    bool lost = false;
    /// Distance between the window center and the new centroid at each
    /// mean-shift iteration.
    std::vector<double> shifts;
};

struct MomentSet {
    // Raw M_ij.
    double m00 = 0, m10 = 0, m01 = 0, m20 = 0, m11 = 0, m02 = 0;
    // Central mu_pq about the centroid.
    double mu00 = 0, mu10 = 0, mu01 = 0, mu20 = 0, mu11 = 0, mu02 = 0;
};

struct TrackConfig {
    int bins = 32;
    int max_iter = 20;
    double eps = 1.0;
    double min_window = 4.0;
};

// Moments of a 1-channel byte image or a probability map, optionally restricted
// to a window. Orders satisfy i + j <= 2.
double raw_moment(const ImageBuffer &img, int i, int j,
                  std::optional<Window> window = std::nullopt);
double raw_moment(const RealImage &img, int i, int j, std::optional<Window> window = std::nullopt);
double central_moment(const ImageBuffer &img, int p, int q);
double central_moment(const RealImage &img, int p, int q);
MomentSet moments(const ImageBuffer &img);
MomentSet moments(const RealImage &img);

/// (M10/M00, M01/M00). Throws EmptyRegion when M00 == 0.
std::pair<double, double> centroid(const ImageBuffer &img);
std::pair<double, double> centroid(const RealImage &img);

/// Intensity histogram of the ROI; v goes to bin floor(v * bins / 256) and the
/// largest bin is scaled to 1.
Histogram build_histogram(const ImageBuffer &img, const Window &roi, int bin_count);

/// Replaces every pixel by its bin weight.
RealImage back_project(const ImageBuffer &img, const Histogram &hist);

/// Recenters a fixed-size window on the centroid of prob until the move is
/// below eps or max_iter is reached. Throws LostTrack on zero window mass.
TrackState mean_shift(const RealImage &prob, const Window &start, int max_iter, double eps);

/// mean_shift followed by window adaptation to side s = 2*sqrt(M00 / p_max),
/// keeping the input aspect ratio. The returned state carries the resized
/// window.
TrackState camshift_step(const RealImage &prob, const Window &window,
                         const TrackConfig &config = {});

/// One state per frame. The histogram comes from initial_roi in frame 0 and is
/// never updated. A frame that loses the target is flagged and the previous
/// window is reused for the next frame.
std::vector<TrackState> track_sequence(const std::vector<ImageBuffer> &frames,
                                       const Window &initial_roi, const TrackConfig &config = {});

/// `frame,cx,cy,wx,wy,ww,wh,converged,lost` with centroids at 3 decimals.
void write_track_csv(std::ostream &out, const std::vector<TrackState> &states);

} // namespace gesture

#endif
