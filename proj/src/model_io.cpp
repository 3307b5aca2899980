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

#include "gesture/model_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "gesture/error.hpp"

namespace gesture::model_io {

namespace {

using nlohmann::json;

constexpr char kMagic[4] = {'G', 'N', 'E', 'T'};

void put_u32(std::vector<std::uint8_t> &out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(b[at + static_cast<std::size_t>(i)]) << (8 * i);
    return v;
}

Shape shape_from_json(const json &j) {
    if (!j.is_array() || j.empty())
        fail(ErrorKind::Format, "GNET header: tensor shape must be a non-empty array");
    Shape s;
    for (const auto &e : j) {
        if (!e.is_number_unsigned() || e.get<std::size_t>() == 0)
            fail(ErrorKind::Format, "GNET header: tensor extents must be positive integers");
        s.push_back(e.get<std::size_t>());
    }
    return s;
}

} // namespace

std::vector<std::uint8_t> encode(const ModelFile &model) {
    json header = model.header;
    json shapes = json::array();
    for (const auto &t : model.tensors)
        shapes.push_back(t.shape());
    header["tensors"] = shapes;
    const std::string text = header.dump();

    std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
    out.push_back(kVersion);
    put_u32(out, static_cast<std::uint32_t>(text.size()));
    out.insert(out.end(), text.begin(), text.end());
    for (const auto &t : model.tensors)
        for (double v : t.values())
            put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
    return out;
}

ModelFile decode(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 9 || std::memcmp(bytes.data(), kMagic, 4) != 0)
        fail(ErrorKind::Format, "not a GNET model file (bad magic)");
    if (bytes[4] != kVersion)
        fail(ErrorKind::Format, "unsupported GNET version " + std::to_string(bytes[4]));
    const std::size_t header_len = get_u32(bytes, 5);
    if (bytes.size() - 9 < header_len)
        fail(ErrorKind::Format, "GNET file truncated inside the header");

    ModelFile model;
    const char *text = reinterpret_cast<const char *>(bytes.data() + 9);
    model.header = json::parse(text, text + header_len, nullptr, false);
    if (model.header.is_discarded() || !model.header.is_object())
        fail(ErrorKind::Format, "GNET header is not a JSON object");
    if (!model.header.contains("kind") || !model.header["kind"].is_string())
        fail(ErrorKind::Format, "GNET header: missing 'kind'");
    if (!model.header.contains("tensors") || !model.header["tensors"].is_array())
        fail(ErrorKind::Format, "GNET header: missing 'tensors'");

    std::size_t at = 9 + header_len;
    for (const auto &js : model.header["tensors"]) {
        Shape shape = shape_from_json(js);
        const std::size_t n = shape_size(shape);
        if ((bytes.size() - at) / 4 < n)
            fail(ErrorKind::Format, "GNET file truncated inside tensor data");
        std::vector<double> values(n);
        for (std::size_t i = 0; i < n; ++i, at += 4)
            values[i] = std::bit_cast<float>(get_u32(bytes, at));
        model.tensors.emplace_back(std::move(shape), std::move(values));
    }
    if (at != bytes.size())
        fail(ErrorKind::Format, "GNET file has trailing bytes after the last tensor");
    model.header.erase("tensors");
    return model;
}

ModelFile read(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::Io, "cannot open model " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    try {
        return decode(bytes);
    } catch (const Error &e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

void write(const std::filesystem::path &path, const ModelFile &model) {
    const auto bytes = encode(model);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail(ErrorKind::Io, "cannot write model " + path.string());
    out.write(reinterpret_cast<const char *>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
        fail(ErrorKind::Io, "short write to " + path.string());
}

json layer_to_json(const LayerSpec &spec) {
    json j = {{"kind", to_string(spec.kind)}};
    switch (spec.kind) {
    case LayerKind::Conv2d:
        j["kernel"] = spec.kernel;
        j["filters"] = spec.filters;
        break;
    case LayerKind::Dropout:
        j["rate"] = spec.rate;
        break;
    case LayerKind::Dense:
        j["units"] = spec.units;
        break;
    default:
        break;
    }
    return j;
}

LayerSpec layer_from_json(const json &j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        fail(ErrorKind::Format, "layer entry must be an object with a 'kind'");
    LayerSpec s;
    s.kind = layer_kind_from_string(j["kind"].get<std::string>());
    try {
        s.kernel = j.value("kernel", 0);
        s.filters = j.value("filters", 0);
        s.rate = j.value("rate", 0.0);
        s.units = j.value("units", 0);
    } catch (const json::exception &e) {
        fail(ErrorKind::Format, std::string("layer entry: ") + e.what());
    }
    return s;
}

ModelFile from_network(const Network &net, const json &meta) {
    ModelFile m;
    json layers = json::array();
    for (const auto &s : net.specs())
        layers.push_back(layer_to_json(s));
    m.header = {{"kind", "classifier"},
                {"input", {net.input().height, net.input().width, net.input().channels}},
                {"layers", layers},
                {"fingerprint", net.fingerprint()},
                {"meta", meta}};
    m.tensors = net.params().tensors;
    return m;
}

Network to_network(const ModelFile &model) {
    const auto &h = model.header;
    if (h.value("kind", "") != "classifier")
        fail(ErrorKind::Format, "model is not a classifier (kind '" + h.value("kind", "") + "')");
    if (!h.contains("input") || !h["input"].is_array() || h["input"].size() != 3 ||
        !h.contains("layers") || !h["layers"].is_array())
        fail(ErrorKind::Format, "classifier header needs 'input' [h, w, c] and 'layers'");
    InputShape input;
    try {
        input = {h["input"][0].get<int>(), h["input"][1].get<int>(), h["input"][2].get<int>()};
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorKind::Format, std::string("classifier header 'input': ") + e.what());
    }
    std::vector<LayerSpec> specs;
    for (const auto &j : h["layers"])
        specs.push_back(layer_from_json(j));
    try {
        Network net(input, specs, NetworkParams{model.tensors});
        if (h.contains("fingerprint") && h["fingerprint"] != net.fingerprint())
            fail(ErrorKind::Format, "classifier fingerprint does not match its layer list");
        return net;
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::InvalidInput)
            fail(ErrorKind::Format, std::string("classifier model: ") + e.what());
        throw;
    }
}

} // namespace gesture::model_io
