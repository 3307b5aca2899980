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

#ifndef GESTURE_TESTS_SUPPORT_HPP
#define GESTURE_TESTS_SUPPORT_HPP

// Independent reference implementations used as test oracles. None of them
// share code with the library; they are written as the plainest possible loops.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <unistd.h>

#include "gesture/image.hpp"
#include "gesture/tensor.hpp"

namespace gesture::testing {

class TempDir {
  public:
    explicit TempDir(const std::string &tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("gesture_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir &) = delete;
    TempDir &operator=(const TempDir &) = delete;
    const std::filesystem::path &path() const { return path_; }
    std::string operator/(const std::string &name) const { return (path_ / name).string(); }

  private:
    std::filesystem::path path_;
};

inline ImageBuffer random_image(int w, int h, int channels, std::mt19937_64 &rng, int lo = 0,
                                int hi = 255) {
    std::uniform_int_distribution<int> u(lo, hi);
    ImageBuffer img(w, h, channels);
    for (auto &v : img.data())
        v = static_cast<std::uint8_t>(u(rng));
    return img;
}

inline Tensor random_tensor(const Shape &shape, std::mt19937_64 &rng, double lo = -1.0,
                            double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    Tensor t(shape);
    for (double &v : t.values())
        v = u(rng);
    return t;
}

// ---------------------------------------------------------------- layers

/// out[y][x][o] = b[o] + sum in[y+i][x+j][c] * k[i][j][c][o]
inline Tensor brute_conv(const Tensor &in, const Tensor &k, const Tensor &b) {
    const std::size_t H = in.dim(0), W = in.dim(1), C = in.dim(2);
    const std::size_t K = k.dim(0), O = k.dim(3);
    Tensor out({H - K + 1, W - K + 1, O});
    for (std::size_t y = 0; y + K <= H; ++y)
        for (std::size_t x = 0; x + K <= W; ++x)
            for (std::size_t o = 0; o < O; ++o) {
                double s = b[o];
                for (std::size_t i = 0; i < K; ++i)
                    for (std::size_t j = 0; j < K; ++j)
                        for (std::size_t c = 0; c < C; ++c)
                            s += in[((y + i) * W + (x + j)) * C + c] *
                                 k[((i * K + j) * C + c) * O + o];
                out[(y * (W - K + 1) + x) * O + o] = s;
            }
    return out;
}

inline Tensor brute_dense(const Tensor &in, const Tensor &w, const Tensor &b) {
    const std::size_t N = w.dim(0), M = w.dim(1);
    Tensor out({M});
    for (std::size_t m = 0; m < M; ++m) {
        double s = b[m];
        for (std::size_t n = 0; n < N; ++n)
            s += in[n] * w[n * M + m];
        out[m] = s;
    }
    return out;
}

// ---------------------------------------------------------------- moments

struct ExactMoments {
    std::int64_t m[3][3] = {}; // m[i][j] = sum x^i y^j I
};

inline ExactMoments brute_raw_moments(const ImageBuffer &img) {
    ExactMoments r;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            const std::int64_t v = img.at(x, y);
            for (int i = 0; i <= 2; ++i)
                for (int j = 0; i + j <= 2; ++j) {
                    std::int64_t t = v;
                    for (int a = 0; a < i; ++a)
                        t *= x;
                    for (int a = 0; a < j; ++a)
                        t *= y;
                    r.m[i][j] += t;
                }
        }
    return r;
}

/// Central moment sum (x - xbar)^p (y - ybar)^q I as the exact rational
/// sum (M00 x - M10)^p (M00 y - M01)^q I / M00^(p+q), reduced and rounded once.
inline double brute_central_moment(const ImageBuffer &img, int p, int q) {
    __extension__ typedef __int128 wide;
    const ExactMoments raw = brute_raw_moments(img);
    const wide m00 = raw.m[0][0], m10 = raw.m[1][0], m01 = raw.m[0][1];
    wide num = 0;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            wide t = img.at(x, y);
            for (int a = 0; a < p; ++a)
                t *= m00 * x - m10;
            for (int a = 0; a < q; ++a)
                t *= m00 * y - m01;
            num += t;
        }
    wide den = 1;
    for (int a = 0; a < p + q; ++a)
        den *= m00;
    if (num == 0)
        return 0.0;
    const bool neg = num < 0;
    wide n = neg ? -num : num;
    wide a = n, b = den;
    while (b != 0) {
        const wide t = a % b;
        a = b;
        b = t;
    }
    n /= a;
    den /= a;
    const double v = static_cast<double>(n) / static_cast<double>(den);
    return neg ? -v : v;
}

// ---------------------------------------------------------------- hull

inline long cross(const Point &o, const Point &a, const Point &b) {
    return static_cast<long>(a.x - o.x) * (b.y - o.y) - static_cast<long>(a.y - o.y) * (b.x - o.x);
}

/// Vertex set of the convex hull by testing every ordered pair as a candidate
/// edge: a->b is a hull edge when no point lies strictly right of it and
/// every collinear point lies on the closed segment.
inline std::set<Point> brute_hull_vertices(const std::vector<Point> &pts_in) {
    std::vector<Point> pts(pts_in);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2)
        return {pts.begin(), pts.end()};
    std::set<Point> out;
    bool any_edge = false;
    for (const Point &a : pts)
        for (const Point &b : pts) {
            if (a == b)
                continue;
            bool ok = true;
            for (const Point &c : pts) {
                const long cr = cross(a, b, c);
                if (cr < 0) {
                    ok = false;
                    break;
                }
                if (cr == 0) {
                    const bool within = std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
                                        std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
                    if (!within) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) {
                out.insert(a);
                out.insert(b);
                any_edge = true;
            }
        }
    if (!any_edge) // all collinear: the two extremes
        return {pts.front(), pts.back()};
    return out;
}

// ---------------------------------------------------------------- gradients

/// Central difference with step h.
inline double central_difference(const std::function<double()> &f, double &x, double h = 1e-5) {
    const double saved = x;
    x = saved + h;
    const double up = f();
    x = saved - h;
    const double down = f();
    x = saved;
    return (up - down) / (2.0 * h);
}

/// |a - n| / max(|a|, |n|), or 0 when both are below `floor`.
inline double relative_error(double analytic, double numeric, double floor = 1e-6) {
    const double scale = std::max(std::abs(analytic), std::abs(numeric));
    if (scale < floor)
        return 0.0;
    return std::abs(analytic - numeric) / scale;
}

} // namespace gesture::testing

#endif
