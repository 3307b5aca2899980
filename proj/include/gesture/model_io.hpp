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

#ifndef GESTURE_MODEL_IO_HPP
#define GESTURE_MODEL_IO_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <json.hpp>

#include "gesture/network.hpp"
#include "gesture/tensor.hpp"

namespace gesture::model_io {

// GNET container:
//   "GNET" | version byte (1) | u32 LE header length | UTF-8 JSON header |
//   every tensor as little-endian IEEE-754 float32, in header order.
// The header always carries "kind" and "tensors" (the list of shapes).

inline constexpr std::uint8_t kVersion = 1;

struct ModelFile {
    nlohmann::json header;
    std::vector<Tensor> tensors;
};

std::vector<std::uint8_t> encode(const ModelFile &model);
ModelFile decode(std::span<const std::uint8_t> bytes);

ModelFile read(const std::filesystem::path &path);
void write(const std::filesystem::path &path, const ModelFile &model);

/// Classifier header: kind, input shape, layer list, fingerprint, plus any
/// caller-supplied fields under "meta" (seed, training config).
ModelFile from_network(const Network &net, const nlohmann::json &meta = nlohmann::json::object());
Network to_network(const ModelFile &model);

nlohmann::json layer_to_json(const LayerSpec &spec);
LayerSpec layer_from_json(const nlohmann::json &j);

} // namespace gesture::model_io

#endif
