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

#ifndef GESTURE_SAMPLES_HPP
#define GESTURE_SAMPLES_HPP

#include "gesture/idx.hpp"
#include "gesture/network.hpp"
#include "gesture/trainer.hpp"

namespace gesture {

// Adapters from images and gesture volumes to classifier inputs. A network
// input may be the source side or twice it (nearest-neighbour upsampling feeds
// the high-resolution network). Image samples keep the byte scale, which the
// small prescribed initial weights need to produce input-dependent activations:
//   1 channel:  intensity in [0, 255]
//   3 channels: intensity, Sobel magnitude rescaled to [0, 255], motion
//               (zero for a still image)

bool accepts(const InputShape &input, int source_side);

Tensor image_to_sample(const ImageBuffer &gray, const InputShape &input);

/// Collapses a (frames, H, W, 3) volume by its temporal mean, then keeps all
/// three channels or only intensity depending on the network.
Tensor volume_to_sample(const Tensor &volume, const InputShape &input);

Dataset to_dataset(const DigitDataset &digits, const InputShape &input);

/// Images as flattened [0, 1] vectors for the VAE.
std::vector<std::vector<double>> to_unit_vectors(const std::vector<ImageBuffer> &images);

} // namespace gesture

#endif
