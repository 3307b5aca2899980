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

#include "gesture/pnm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "gesture/error.hpp"

namespace gesture::pnm {

namespace {

class HeaderReader {
  public:
    explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    int next_int(const char *field) {
        skip_space_and_comments();
        std::size_t start = pos_;
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            require(value <= 1'000'000, ErrorKind::Format,
                    std::string("PNM ") + field + " is too large");
            ++pos_;
        }
        require(pos_ > start, ErrorKind::Format, std::string("PNM header: missing ") + field);
        return static_cast<int>(value);
    }

    // Exactly one whitespace byte separates maxval from the raster.
    void single_whitespace() {
        require(pos_ < bytes_.size() && std::isspace(bytes_[pos_]), ErrorKind::Format,
                "PNM header: expected whitespace after maxval");
        ++pos_;
    }

    std::size_t position() const noexcept { return pos_; }

  private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n')
                    ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 2;
};

} // namespace

std::vector<std::uint8_t> encode(const ImageBuffer &img) {
    require(img.channels() == 1 || img.channels() == 3, ErrorKind::InvalidInput,
            "PNM encode: image must have 1 or 3 channels");
    std::string header = (img.channels() == 1 ? "P5\n" : "P6\n") + std::to_string(img.width()) +
                         " " + std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.data().begin(), img.data().end());
    return out;
}

ImageBuffer decode(std::span<const std::uint8_t> bytes) {
    require(bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6'),
            ErrorKind::Format, "PNM: unsupported magic (expected P5 or P6)");
    const int channels = bytes[1] == '5' ? 1 : 3;
    HeaderReader reader(bytes);
    const int width = reader.next_int("width");
    const int height = reader.next_int("height");
    const int maxval = reader.next_int("maxval");
    require(width >= 1 && height >= 1, ErrorKind::Format, "PNM: dimensions must be positive");
    require(maxval == 255, ErrorKind::Format,
            "PNM: maxval must be 255, got " + std::to_string(maxval));
    reader.single_whitespace();

    const std::size_t need = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
                             static_cast<std::size_t>(channels);
    const std::size_t offset = reader.position();
    require(bytes.size() - offset >= need, ErrorKind::Format, "PNM: truncated raster");
    std::vector<std::uint8_t> data(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                                   bytes.begin() + static_cast<std::ptrdiff_t>(offset + need));
    return ImageBuffer(width, height, channels, std::move(data));
}

ImageBuffer read(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::Io, "cannot open image " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    try {
        return decode(bytes);
    } catch (const Error &e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

void write(const std::filesystem::path &path, const ImageBuffer &img) {
    const auto bytes = encode(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail(ErrorKind::Io, "cannot write image " + path.string());
    out.write(reinterpret_cast<const char *>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
        fail(ErrorKind::Io, "short write to " + path.string());
}

} // namespace gesture::pnm
