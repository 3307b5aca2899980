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

#include "gesture/optimizer.hpp"

#include <cmath>
#include <string>

#include "gesture/error.hpp"

namespace gesture {

OptimizerState OptimizerState::zeros_like(const std::vector<Tensor> &params) {
    OptimizerState s;
    s.velocity.reserve(params.size());
    for (const auto &p : params)
        s.velocity.emplace_back(p.shape(), 0.0);
    return s;
}

void nag_step(std::vector<Tensor> &params, const std::vector<Tensor> &grads, OptimizerState &state,
              double learning_rate, double momentum) {
    require(learning_rate > 0.0, ErrorKind::InvalidInput, "nag_step: learning rate must be > 0");
    require(momentum >= 0.0 && momentum < 1.0, ErrorKind::InvalidInput,
            "nag_step: momentum must be in [0, 1)");
    if (state.velocity.empty())
        state = OptimizerState::zeros_like(params);
    require(params.size() == grads.size() && params.size() == state.velocity.size(),
            ErrorKind::InvalidInput, "nag_step: parameter, gradient and velocity lists differ");
    for (std::size_t t = 0; t < params.size(); ++t) {
        require(params[t].shape() == grads[t].shape() &&
                    params[t].shape() == state.velocity[t].shape(),
                ErrorKind::InvalidInput, "nag_step: shape mismatch in tensor " + std::to_string(t));
        for (double g : grads[t].values())
            if (!std::isfinite(g))
                fail(ErrorKind::Numeric,
                     "nag_step: non-finite gradient in parameter tensor " + std::to_string(t));
    }

    for (std::size_t t = 0; t < params.size(); ++t) {
        auto w = params[t].data();
        auto v = state.velocity[t].data();
        const auto g = grads[t].data();
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double step = learning_rate * g[i];
            v[i] = momentum * v[i] - step;
            w[i] += momentum * v[i] - step;
        }
    }
}

} // namespace gesture
