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

#ifndef GESTURE_SYNTH_HPP
#define GESTURE_SYNTH_HPP

#include <cstdint>
#include <vector>

#include "gesture/idx.hpp"
#include "gesture/tracking.hpp"

namespace gesture::synth {

/// Stroke-rendered digits 0-9 on 28x28 with random scale, rotation, shift,
/// stroke width and sensor noise. Labels cycle 0..9 before shuffling, so
/// classes are balanced to within one.
DigitDataset digits(std::size_t count, std::uint64_t seed);

struct BlobScene {
    std::vector<ImageBuffer> frames;
    std::vector<double> true_cx;
    std::vector<double> true_cy;
    /// Square inscribed in the blob in frame 0.
    Window initial_roi;
};

struct BlobSceneConfig {
    int width = 240;
    int height = 240;
    int frames = 30;
    double radius = 10.0;
    double vx = 0.0; // px / frame
    double vy = 0.0;
};

/// A bright noisy disk moving at constant velocity over a dark noisy
/// background. The trajectory is centred in the frame.
BlobScene blob_scene(const BlobSceneConfig &config, std::uint64_t seed);

} // namespace gesture::synth

#endif
