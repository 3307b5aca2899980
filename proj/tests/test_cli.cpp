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

#include <gtest/gtest.h>

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "gesture/cli.hpp"
#include "gesture/idx.hpp"
#include "gesture/imaging.hpp"
#include "gesture/model_io.hpp"
#include "gesture/pnm.hpp"
#include "gesture/synth.hpp"
#include "gesture/tracking.hpp"
#include "gesture/vae.hpp"
#include "support.hpp"

namespace gesture {
namespace {

using nlohmann::json;
using testing::TempDir;

struct Run {
    int code = -1;
    std::string out;
    std::string err;
    std::vector<json> lines() const {
        std::vector<json> v;
        std::istringstream in(out);
        std::string line;
        while (std::getline(in, line))
            v.push_back(json::parse(line));
        return v;
    }
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "gesture");
    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::size_t file_count(const std::filesystem::path &dir) {
    return static_cast<std::size_t>(
        std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator()));
}

/// Green-screen frames with a grey square moving right.
std::vector<ImageBuffer> green_frames(TempDir &dir, int n) {
    std::vector<ImageBuffer> frames;
    for (int i = 0; i < n; ++i) {
        ImageBuffer f(24, 16, 3);
        for (int y = 0; y < 16; ++y)
            for (int x = 0; x < 24; ++x) {
                const bool hand = x >= 4 + 2 * i && x < 10 + 2 * i && y >= 5 && y < 11;
                f.at(x, y, 0) = hand ? 170 : 10;
                f.at(x, y, 1) = hand ? 150 : 240;
                f.at(x, y, 2) = hand ? 140 : 12;
            }
        char name[32];
        std::snprintf(name, sizeof name, "frame_%04d.ppm", i);
        pnm::write(dir / name, f);
        frames.push_back(f);
    }
    return frames;
}

TEST(Cli, HelpExitsZero) {
    const auto r = cli({"--help"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("segment"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli({}).code, kExitUsage);
    EXPECT_EQ(cli({"dance"}).code, kExitUsage);
    EXPECT_EQ(cli({"segment", "--input"}).code, kExitUsage);
    EXPECT_EQ(cli({"track", "--input", "x", "--out", "y.csv"}).code, kExitUsage);
}

TEST(CliSegment, MasksMatchLibrary) {
    TempDir in("seg_in"), out("seg_out");
    const auto frames = green_frames(in, 3);
    const auto r = cli({"segment", "--input", in.path().string(), "--key", "10,240,12",
                        "--threshold", "60", "--out", out.path().string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto lines = r.lines();
    ASSERT_EQ(lines.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        const auto expect = color_distance_mask(frames[i], {10, 240, 12}, 60);
        char name[32];
        std::snprintf(name, sizeof name, "mask_%04zu.pgm", i);
        EXPECT_EQ(pnm::read(out / name), expect);
        EXPECT_EQ(lines[i]["frame"], i);
        EXPECT_EQ(lines[i]["foreground"], 36);
        EXPECT_EQ(lines[i]["hull"].size(), 4u);
        EXPECT_TRUE(lines[i]["motion"].is_null());
    }
    EXPECT_EQ(file_count(out.path()), 3u);
}

TEST(CliSegment, BackgroundAndMotion) {
    TempDir in("seg_in"), out("seg_out");
    const auto frames = green_frames(in, 2);
    const ImageBuffer bg(24, 16, 3, 99);
    pnm::write(in / "bg.ppm", bg);
    const auto r = cli({"segment", "--input", in.path().string(), "--background", in / "bg.ppm",
                        "--diff-threshold", "20", "--out", out.path().string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto mask = pnm::read(out / "mask_0001.pgm");
    EXPECT_EQ(pnm::read(out / "composite_0001.ppm"), replace_background(frames[1], bg, mask));
    const auto lines = r.lines();
    EXPECT_EQ(lines[0]["motion"], 0);
    EXPECT_EQ(lines[1]["motion"],
              count_nonzero(frame_difference(grayscale(frames[1]), grayscale(frames[0]), 20)));
}

TEST(CliSegment, ThresholdCeilingGivesEmptyMasks) {
    TempDir in("seg_in"), out("seg_out");
    green_frames(in, 2);
    const auto r = cli({"segment", "--input", in.path().string(), "--threshold", "255", "--out",
                        out.path().string()});
    ASSERT_EQ(r.code, kExitOk);
    for (const auto &l : r.lines()) {
        EXPECT_EQ(l["foreground"], 0);
        EXPECT_TRUE(l["hull"].empty());
    }
}

TEST(CliSegment, MissingDirectory) {
    TempDir out("seg_out");
    const auto target = out / "never";
    const auto r = cli({"segment", "--input", "/nonexistent/frames", "--out", target});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_FALSE(r.err.empty());
    EXPECT_FALSE(std::filesystem::exists(target));
}

TEST(CliSegment, BadKeyCreatesNothing) {
    TempDir in("seg_in"), out("seg_out");
    green_frames(in, 1);
    const auto target = out / "never";
    EXPECT_EQ(cli({"segment", "--input", in.path().string(), "--key", "1,2", "--out", target}).code,
              kExitUsage);
    EXPECT_EQ(cli({"segment", "--input", in.path().string(), "--background", "/nonexistent.ppm",
                   "--out", target})
                  .code,
              kExitUsage);
    EXPECT_FALSE(std::filesystem::exists(target));
}

void write_frames(TempDir &dir, const std::vector<ImageBuffer> &frames) {
    for (std::size_t i = 0; i < frames.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%04zu.pgm", i);
        pnm::write(dir / name, frames[i]);
    }
}

std::string roi_arg(const Window &w) {
    return std::to_string(w.x) + "," + std::to_string(w.y) + "," + std::to_string(w.w) + "," +
           std::to_string(w.h);
}

TEST(CliTrack, CsvMatchesLibrary) {
    synth::BlobSceneConfig cfg;
    cfg.width = 96;
    cfg.height = 80;
    cfg.frames = 8;
    cfg.vx = 2;
    const auto scene = synth::blob_scene(cfg, 4);
    TempDir in("trk_in"), out("trk_out");
    write_frames(in, scene.frames);
    const auto r = cli({"track", "--input", in.path().string(), "--roi", roi_arg(scene.initial_roi),
                        "--out", out / "t.csv"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::ostringstream expect;
    write_track_csv(expect, track_sequence(scene.frames, scene.initial_roi));
    EXPECT_EQ(slurp(out / "t.csv"), expect.str());
    const auto overlay = pnm::read(out / "t_overlay.ppm");
    EXPECT_EQ(overlay.channels(), 3);
    EXPECT_EQ(overlay.width(), 96);
    EXPECT_EQ(r.lines().front()["frames"], 8);
}

TEST(CliTrack, StationaryBlobAlwaysConverges) {
    synth::BlobSceneConfig cfg;
    cfg.width = 64;
    cfg.height = 64;
    cfg.frames = 6;
    const auto scene = synth::blob_scene(cfg, 5);
    TempDir in("trk_in"), out("trk_out");
    write_frames(in, scene.frames);
    const auto r = cli({"track", "--input", in.path().string(), "--roi", roi_arg(scene.initial_roi),
                        "--out", out / "t.csv", "--overlay", out / "o.ppm"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::istringstream csv(slurp(out / "t.csv"));
    std::string line;
    std::getline(csv, line);
    int rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        EXPECT_EQ(line.substr(line.size() - 4), ",1,0") << line;
    }
    EXPECT_EQ(rows, 6);
    EXPECT_TRUE(std::filesystem::exists(out / "o.ppm"));
}

TEST(CliTrack, RoiOutsideImageIsRejectedBeforeWork) {
    TempDir in("trk_in"), out("trk_out");
    write_frames(in, {ImageBuffer(32, 32, 1, 50)});
    const auto r = cli({"track", "--input", in.path().string(), "--roi", "30,30,8,8", "--out",
                        out / "t.csv"});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_EQ(file_count(out.path()), 0u);
}

TEST(CliTrack, LostFramesAreFlaggedNotFatal) {
    ImageBuffer first(32, 32, 1, 0);
    for (int y = 10; y < 20; ++y)
        for (int x = 10; x < 20; ++x)
            first.at(x, y) = 200;
    TempDir in("trk_in"), out("trk_out");
    write_frames(in, {first, ImageBuffer(32, 32, 1, 0)});
    const auto r = cli({"track", "--input", in.path().string(), "--roi", "12,12,6,6", "--out",
                        out / "t.csv"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.lines().front()["lost"], 1);
    EXPECT_NE(slurp(out / "t.csv").find(",0,1\n"), std::string::npos);
}

TEST(CliTrain, PrintParams) {
    const auto r = cli({"train", "--arch", "figure1", "--print-params"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("Total params: 1,199,882"), std::string::npos);
    for (const char *row : {"convolution2d_1", "convolution2d_2", "maxpooling2d_1", "dropout_1",
                            "flatten_1", "dense_1", "dropout_2", "dense_2"})
        EXPECT_NE(r.out.find(row), std::string::npos) << row;
    EXPECT_NE(r.out.find("1,179,776"), std::string::npos);
    EXPECT_NE(r.out.find("(None, 32, 26, 26)"), std::string::npos);
}

TEST(CliTrain, ValidationHappensBeforeWork) {
    TempDir out("trn");
    EXPECT_EQ(cli({"train", "--synth", "20", "--out", out / "m.gnet", "--lr", "-1"}).code,
              kExitUsage);
    EXPECT_EQ(cli({"train", "--synth", "20", "--out", out / "m.gnet", "--channels", "2"}).code,
              kExitUsage);
    EXPECT_EQ(cli({"train", "--synth", "20", "--out", out / "m.gnet", "--arch", "vgg"}).code,
              kExitUsage);
    EXPECT_EQ(cli({"train", "--out", out / "m.gnet"}).code, kExitUsage);
    EXPECT_EQ(cli({"train", "--synth", "20", "--out", out / "missing/m.gnet"}).code, kExitUsage);
    EXPECT_EQ(file_count(out.path()), 0u);
}

TEST(CliTrain, DeterministicModelAndHistory) {
    TempDir out("trn");
    const std::vector<std::string> common{"train", "--synth", "40", "--holdout", "10", "--epochs",
                                          "2", "--batch", "20", "--seed", "3"};
    auto a = common, b = common;
    a.insert(a.end(), {"--out", out / "a.gnet", "--history", out / "a.json"});
    b.insert(b.end(), {"--out", out / "b.gnet", "--history", out / "b.json"});
    const auto ra = cli(a), rb = cli(b);
    ASSERT_EQ(ra.code, kExitOk) << ra.err;
    ASSERT_EQ(rb.code, kExitOk) << rb.err;
    EXPECT_EQ(slurp(out / "a.gnet"), slurp(out / "b.gnet"));
    EXPECT_EQ(slurp(out / "a.json"), slurp(out / "b.json"));
    const auto lines = ra.lines();
    const auto other = rb.lines();
    ASSERT_EQ(other.size(), lines.size());
    for (std::size_t i = 0; i + 1 < lines.size(); ++i)
        EXPECT_EQ(lines[i], other[i]);
    ASSERT_EQ(lines.size(), 3u);
    EXPECT_EQ(lines[0]["epoch"], 1);
    EXPECT_TRUE(lines[2].contains("heldout_accuracy"));
    EXPECT_TRUE(lines[2].contains("train_accuracy"));
    const auto model = model_io::to_network(model_io::read(out / "a.gnet"));
    EXPECT_EQ(model.input(), (InputShape{28, 28, 1}));
}

TEST(CliTrain, ConfigFileWithFlagOverride) {
    TempDir dir("cfg");
    {
        std::ofstream f(dir / "c.json");
        f << R"({"print-params": true, "input-size": 56})";
    }
    const auto from_file = cli({"train", "--config", dir / "c.json"});
    ASSERT_EQ(from_file.code, kExitOk) << from_file.err;
    EXPECT_NE(from_file.out.find("(None, 32, 54, 54)"), std::string::npos);
    const auto overridden = cli({"train", "--config", dir / "c.json", "--input-size", "28"});
    EXPECT_NE(overridden.out.find("Total params: 1,199,882"), std::string::npos);
    {
        std::ofstream f(dir / "bad.json");
        f << R"({"no-such-flag": 1})";
    }
    EXPECT_EQ(cli({"train", "--config", dir / "bad.json"}).code, kExitUsage);
    {
        std::ofstream f(dir / "junk.json");
        f << "not json";
    }
    EXPECT_EQ(cli({"train", "--config", dir / "junk.json"}).code, kExitUsage);
}

class CliClassify : public ::testing::Test {
  protected:
    static void SetUpTestSuite() {
        dir_ = new TempDir("cls");
        const auto data = synth::digits(12, 5);
        idx::save(data, *dir_ / "i.idx", *dir_ / "l.idx");
        const InputShape in{28, 28, 1};
        const Network net(in, figure1_specs(), init_params(in, figure1_specs(), 1));
        model_io::write(*dir_ / "m.gnet", model_io::from_network(net));
        const InputShape wide{56, 56, 3};
        const Network big(wide, figure1_specs(), init_params(wide, figure1_specs(), 2));
        model_io::write(*dir_ / "h.gnet", model_io::from_network(big));
    }
    static void TearDownTestSuite() { delete dir_; }
    static TempDir *dir_;
};

TempDir *CliClassify::dir_ = nullptr;

TEST_F(CliClassify, SingleModelArgmax) {
    const auto r = cli({"classify", "--model", *dir_ / "m.gnet", "--images", *dir_ / "i.idx",
                        "--labels", *dir_ / "l.idx"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto lines = r.lines();
    ASSERT_EQ(lines.size(), 13u);
    for (std::size_t i = 0; i < 12; ++i) {
        const auto probs = lines[i]["probs"].get<std::vector<double>>();
        ASSERT_EQ(probs.size(), 10u);
        const auto best = static_cast<std::size_t>(
            std::max_element(probs.begin(), probs.end()) - probs.begin());
        EXPECT_EQ(lines[i]["class"], best);
        EXPECT_EQ(lines[i]["index"], i);
        EXPECT_FALSE(lines[i]["label"].is_null());
    }
    EXPECT_TRUE(lines[12].contains("accuracy"));
}

TEST_F(CliClassify, IdenticalModelsFuseToSameClass) {
    const auto one = cli({"classify", "--model", *dir_ / "m.gnet", "--images", *dir_ / "i.idx"});
    const auto two = cli({"classify", "--model", *dir_ / "m.gnet", "--model", *dir_ / "m.gnet",
                          "--images", *dir_ / "i.idx"});
    ASSERT_EQ(two.code, kExitOk) << two.err;
    const auto a = one.lines(), b = two.lines();
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        EXPECT_EQ(a[i]["class"], b[i]["class"]);
}

TEST_F(CliClassify, MixedResolutionFusion) {
    const auto r = cli({"classify", "--model", *dir_ / "m.gnet", "--model", *dir_ / "h.gnet",
                        "--images", *dir_ / "i.idx"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.lines().size(), 12u);
}

TEST_F(CliClassify, FrameDirectoryInput) {
    TempDir frames("cls_frames");
    std::mt19937_64 rng(6);
    for (int i = 0; i < 5; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%04d.pgm", i);
        pnm::write(frames / name, testing::random_image(56, 56, 1, rng));
    }
    const auto r = cli({"classify", "--model", *dir_ / "h.gnet", "--frames", frames.path().string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    ASSERT_EQ(r.lines().size(), 1u);
    EXPECT_TRUE(r.lines()[0]["label"].is_null());
}

TEST_F(CliClassify, CorruptModelIsFormatError) {
    std::string bytes = slurp(*dir_ / "m.gnet");
    bytes[0] = 'X';
    TempDir tmp("cls_bad");
    {
        std::ofstream f(tmp / "bad.gnet", std::ios::binary);
        f << bytes;
    }
    const auto r = cli({"classify", "--model", tmp / "bad.gnet", "--images", *dir_ / "i.idx"});
    EXPECT_EQ(r.code, kExitFormat);
}

TEST_F(CliClassify, InputShapeMismatchIsFormatError) {
    const InputShape odd{30, 30, 1};
    const Network net(odd, figure1_specs(), init_params(odd, figure1_specs(), 1));
    TempDir tmp("cls_odd");
    model_io::write(tmp / "odd.gnet", model_io::from_network(net));
    EXPECT_EQ(cli({"classify", "--model", tmp / "odd.gnet", "--images", *dir_ / "i.idx"}).code,
              kExitFormat);
    const auto vae = vae_to_model(init_vae(784, 8, 2, 1));
    model_io::write(tmp / "vae.gnet", vae);
    EXPECT_EQ(cli({"classify", "--model", tmp / "vae.gnet", "--images", *dir_ / "i.idx"}).code,
              kExitFormat);
}

TEST(CliVae, ZeroModelGridIsUniform) {
    TempDir dir("vae");
    ASSERT_EQ(cli({"vae", "init", "--zero", "--out", dir / "z.gnet"}).code, kExitOk);
    const auto r = cli({"vae", "grid", "--model", dir / "z.gnet", "--grid", "4", "--out",
                        dir / "g.pgm"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto img = pnm::read(dir / "g.pgm");
    EXPECT_EQ(img.width(), 112);
    for (auto v : img.data())
        ASSERT_EQ(v, 128);
}

TEST(CliVae, MissingModelForGrid) {
    TempDir dir("vae");
    const auto r = cli({"vae", "grid", "--model", dir / "none.gnet", "--out", dir / "g.pgm"});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("cannot open"), std::string::npos);
    EXPECT_FALSE(std::filesystem::exists(dir / "g.pgm"));
}

TEST(CliVae, TrainWritesModelAndHistory) {
    TempDir dir("vae");
    const std::vector<std::string> args{"vae", "train", "--synth", "40", "--epochs", "3",
                                        "--hidden", "16", "--seed", "2"};
    auto a = args, b = args;
    a.insert(a.end(), {"--out", dir / "a.gnet", "--history", dir / "a.json"});
    b.insert(b.end(), {"--out", dir / "b.gnet", "--history", dir / "b.json"});
    const auto ra = cli(a);
    ASSERT_EQ(ra.code, kExitOk) << ra.err;
    ASSERT_EQ(cli(b).code, kExitOk);
    EXPECT_EQ(slurp(dir / "a.gnet"), slurp(dir / "b.gnet"));
    const auto history = json::parse(slurp(dir / "a.json"));
    EXPECT_EQ(history["epoch_loss"].size(), 3u);
    EXPECT_EQ(vae_from_model(model_io::read(dir / "a.gnet")).hidden, 16);
    // Continue training from the saved model.
    const auto more = cli({"vae", "train", "--model", dir / "a.gnet", "--synth", "40", "--epochs",
                           "1", "--out", dir / "c.gnet"});
    EXPECT_EQ(more.code, kExitOk) << more.err;
}

TEST(CliVae, HistoryMostlyMonotoneOnDigits) {
    TempDir dir("vae");
    const auto r = cli({"vae", "train", "--synth", "500", "--seed", "1", "--out", dir / "v.gnet",
                        "--history", dir / "h.json"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto loss = json::parse(slurp(dir / "h.json"))["epoch_loss"].get<std::vector<double>>();
    ASSERT_EQ(loss.size(), 20u);
    int ok = 0;
    for (std::size_t i = 1; i < loss.size(); ++i)
        ok += loss[i] <= loss[i - 1] ? 1 : 0;
    EXPECT_GE(ok, 16) << "of 19 transitions";
}

TEST(CliVae, RequiresExactlyOneDataSource) {
    TempDir dir("vae");
    EXPECT_EQ(cli({"vae", "train", "--out", dir / "a.gnet"}).code, kExitUsage);
    EXPECT_EQ(cli({"vae"}).code, kExitUsage);
}

} // namespace
} // namespace gesture
