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

#include "gesture/idx.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <string>

#include "gesture/error.hpp"

namespace gesture::idx {

namespace {

std::uint32_t be32(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint32_t>(b[at]) << 24 | static_cast<std::uint32_t>(b[at + 1]) << 16 |
           static_cast<std::uint32_t>(b[at + 2]) << 8 | static_cast<std::uint32_t>(b[at + 3]);
}

void put_be32(std::vector<std::uint8_t> &out, std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::string hex(std::uint32_t v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%08x", v);
    return buf;
}

void check_magic(std::span<const std::uint8_t> bytes, std::uint32_t expected, const char *what) {
    require(bytes.size() >= 8, ErrorKind::Format,
            std::string("IDX ") + what + ": truncated header");
    const std::uint32_t magic = be32(bytes, 0);
    require(magic == expected, ErrorKind::Format,
            std::string("IDX ") + what + ": bad magic " + hex(magic) + " (expected " +
                hex(expected) + ")");
}

std::vector<std::uint8_t> slurp(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::Io, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spill(const std::filesystem::path &path, const std::vector<std::uint8_t> &bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail(ErrorKind::Io, "cannot write " + path.string());
    out.write(reinterpret_cast<const char *>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
        fail(ErrorKind::Io, "short write to " + path.string());
}

template <typename F> auto with_path(const std::filesystem::path &path, F &&f) {
    try {
        return f();
    } catch (const Error &e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

} // namespace

std::vector<ImageBuffer> decode_images(std::span<const std::uint8_t> bytes) {
    check_magic(bytes, kImageMagic, "images");
    require(bytes.size() >= 16, ErrorKind::Format, "IDX images: truncated dimension header");
    const std::uint32_t count = be32(bytes, 4);
    const std::uint32_t rows = be32(bytes, 8);
    const std::uint32_t cols = be32(bytes, 12);
    require(rows == kSide, ErrorKind::Format,
            "IDX images: rows = " + std::to_string(rows) + ", expected 28");
    require(cols == kSide, ErrorKind::Format,
            "IDX images: cols = " + std::to_string(cols) + ", expected 28");
    const std::size_t plane = static_cast<std::size_t>(kSide) * kSide;
    require((bytes.size() - 16) / plane >= count, ErrorKind::Format,
            "IDX images: truncated pixel data for count = " + std::to_string(count));
    std::vector<ImageBuffer> images;
    images.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        auto first = bytes.begin() + static_cast<std::ptrdiff_t>(16 + i * plane);
        images.emplace_back(kSide, kSide, 1,
                            std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(plane)));
    }
    return images;
}

std::vector<int> decode_labels(std::span<const std::uint8_t> bytes) {
    check_magic(bytes, kLabelMagic, "labels");
    const std::uint32_t count = be32(bytes, 4);
    require(bytes.size() - 8 >= count, ErrorKind::Format,
            "IDX labels: truncated label data for count = " + std::to_string(count));
    std::vector<int> labels;
    labels.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const int v = bytes[8 + i];
        require(v < 10, ErrorKind::Format,
                "IDX labels: label " + std::to_string(v) + " at index " + std::to_string(i) +
                    " is not a digit");
        labels.push_back(v);
    }
    return labels;
}

std::vector<std::uint8_t> encode_images(const std::vector<ImageBuffer> &images) {
    std::vector<std::uint8_t> out;
    put_be32(out, kImageMagic);
    put_be32(out, static_cast<std::uint32_t>(images.size()));
    put_be32(out, kSide);
    put_be32(out, kSide);
    for (const auto &img : images) {
        require(img.width() == kSide && img.height() == kSide && img.channels() == 1,
                ErrorKind::InvalidInput, "IDX images must be 28x28 grayscale");
        out.insert(out.end(), img.data().begin(), img.data().end());
    }
    return out;
}

std::vector<std::uint8_t> encode_labels(const std::vector<int> &labels) {
    std::vector<std::uint8_t> out;
    put_be32(out, kLabelMagic);
    put_be32(out, static_cast<std::uint32_t>(labels.size()));
    for (int v : labels) {
        require(v >= 0 && v < 10, ErrorKind::InvalidInput, "IDX labels must be 0-9");
        out.push_back(static_cast<std::uint8_t>(v));
    }
    return out;
}

DigitDataset load(const std::filesystem::path &images_path,
                  const std::filesystem::path &labels_path) {
    DigitDataset d;
    d.images = load_images(images_path);
    const auto label_bytes = slurp(labels_path);
    d.labels = with_path(labels_path, [&] { return decode_labels(label_bytes); });
    require(d.images.size() == d.labels.size(), ErrorKind::Format,
            "IDX count mismatch: " + std::to_string(d.images.size()) + " images vs " +
                std::to_string(d.labels.size()) + " labels");
    return d;
}

std::vector<ImageBuffer> load_images(const std::filesystem::path &images_path) {
    const auto bytes = slurp(images_path);
    return with_path(images_path, [&] { return decode_images(bytes); });
}

void save(const DigitDataset &data, const std::filesystem::path &images_path,
          const std::filesystem::path &labels_path) {
    require(data.images.size() == data.labels.size(), ErrorKind::InvalidInput,
            "IDX save: image and label counts differ");
    spill(images_path, encode_images(data.images));
    spill(labels_path, encode_labels(data.labels));
}

} // namespace gesture::idx
