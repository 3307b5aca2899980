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

#include "gesture/fusion.hpp"

#include <cmath>

#include "gesture/error.hpp"

namespace gesture {

namespace {

void require_distribution(std::span<const double> p, const char *which) {
    require(!p.empty(), ErrorKind::InvalidInput, std::string(which) + " probabilities are empty");
    double sum = 0.0;
    for (double v : p) {
        require(std::isfinite(v) && v >= 0.0, ErrorKind::InvalidInput,
                std::string(which) + " probabilities must be finite and non-negative");
        sum += v;
    }
    require(std::abs(sum - 1.0) <= 1e-9, ErrorKind::InvalidInput,
            std::string(which) + " probabilities must sum to 1");
}

} // namespace

FusedPrediction fuse_predict(std::span<const double> probs_low, std::span<const double> probs_high) {
    require(probs_low.size() == probs_high.size(), ErrorKind::InvalidInput,
            "fuse_predict: probability vectors differ in length");
    require_distribution(probs_low, "low-resolution");
    require_distribution(probs_high, "high-resolution");

    FusedPrediction out;
    out.probs.resize(probs_low.size());
    double total = 0.0;
    for (std::size_t c = 0; c < out.probs.size(); ++c) {
        out.probs[c] = probs_low[c] * probs_high[c];
        total += out.probs[c];
    }
    if (!(total > 0.0))
        fail(ErrorKind::DegenerateFusion, "fuse_predict: element-wise product is identically zero");
    for (std::size_t c = 0; c < out.probs.size(); ++c) {
        out.probs[c] /= total;
        if (out.probs[c] > out.probs[out.label])
            out.label = c;
    }
    return out;
}

} // namespace gesture
