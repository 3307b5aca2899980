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

#ifndef GESTURE_FUSION_HPP
#define GESTURE_FUSION_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace gesture {

struct FusedPrediction {
    std::vector<double> probs;
    std::size_t label = 0;
};

/// Element-wise product of the low- and high-resolution class probabilities,
/// renormalised to sum to one; the label is the argmax with ties going to the
/// lower index. Inputs must be equal-length probability vectors.
FusedPrediction fuse_predict(std::span<const double> probs_low, std::span<const double> probs_high);

} // namespace gesture

#endif
