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

#ifndef GESTURE_OPTIMIZER_HPP
#define GESTURE_OPTIMIZER_HPP

#include <vector>

#include "gesture/tensor.hpp"

namespace gesture {

/// Velocity per parameter tensor, zero-initialised.
struct OptimizerState {
    std::vector<Tensor> velocity;

    static OptimizerState zeros_like(const std::vector<Tensor> &params);
};

/// Nesterov accelerated gradient with `grads` the batch-averaged loss gradient:
///
///     v <- mu * v - lr * g
///     w <- w + mu * v - lr * g
///
/// i.e. w <- w + mu^2 * v_prev - (1 + mu) * lr * g. Throws Numeric before
/// touching anything if a gradient is not finite.
void nag_step(std::vector<Tensor> &params, const std::vector<Tensor> &grads, OptimizerState &state,
              double learning_rate, double momentum);

} // namespace gesture

#endif
