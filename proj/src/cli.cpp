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

#include "gesture/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cli_config.hpp"
#include "gesture/error.hpp"
#include "gesture/fusion.hpp"
#include "gesture/idx.hpp"
#include "gesture/imaging.hpp"
#include "gesture/model_io.hpp"
#include "gesture/network.hpp"
#include "gesture/pnm.hpp"
#include "gesture/preprocess.hpp"
#include "gesture/samples.hpp"
#include "gesture/synth.hpp"
#include "gesture/tracking.hpp"
#include "gesture/trainer.hpp"
#include "gesture/vae.hpp"

namespace gesture {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void emit(std::ostream &out, const json &j) { out << j.dump() << '\n'; }

std::vector<int> parse_ints(const std::string &text, std::size_t count, const std::string &flag) {
    std::vector<int> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        require(used == item.size() && !item.empty(), ErrorKind::InvalidInput,
                flag + ": '" + text + "' is not a comma-separated integer list");
        values.push_back(v);
    }
    require(values.size() == count, ErrorKind::InvalidInput,
            flag + ": expected " + std::to_string(count) + " comma-separated integers");
    return values;
}

std::string frame_name(const char *prefix, std::size_t i, const char *ext) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%04zu.%s", prefix, i, ext);
    return buf;
}

/// Output files may only land in directories that already exist.
void require_writable_parent(const fs::path &file, const std::string &flag) {
    const fs::path parent = file.parent_path();
    require(parent.empty() || fs::is_directory(parent), ErrorKind::Io,
            flag + ": directory " + parent.string() + " does not exist");
    require(!fs::is_directory(file), ErrorKind::Io, flag + ": " + file.string() + " is a directory");
}

void write_json_file(const fs::path &path, const json &j) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        fail(ErrorKind::Io, "cannot write " + path.string());
    f << j.dump(2) << '\n';
    if (!f)
        fail(ErrorKind::Io, "short write to " + path.string());
}

// ---------------------------------------------------------------- segment

struct SegmentArgs {
    std::string input;
    std::string key = "0,255,0";
    int threshold = 60;
    std::string background;
    std::string out;
    int diff_threshold = -1;
};

int cmd_segment(const SegmentArgs &a, std::ostream &out) {
    const auto keyv = parse_ints(a.key, 3, "--key");
    for (int v : keyv)
        require(v >= 0 && v <= 255, ErrorKind::InvalidInput, "--key: components must be 0-255");
    const Rgb key{static_cast<std::uint8_t>(keyv[0]), static_cast<std::uint8_t>(keyv[1]),
                  static_cast<std::uint8_t>(keyv[2])};

    const GestureSequence frames = load_frame_directory(a.input);
    require(frames.front().channels() == 3, ErrorKind::InvalidInput,
            "segment: frames must be colour (PPM) images");
    std::optional<ImageBuffer> background;
    if (!a.background.empty()) {
        background = pnm::read(a.background);
        require(background->channels() == 3 && background->same_size(frames.front()),
                ErrorKind::InvalidInput, "--background: must be a PPM the size of the frames");
    }
    require(!fs::exists(a.out) || fs::is_directory(a.out), ErrorKind::Io,
            "--out: " + a.out + " exists and is not a directory");

    fs::create_directories(a.out);
    const fs::path dir(a.out);
    ImageBuffer prev_gray;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const ImageBuffer mask = color_distance_mask(frames[i], key,
                                                     static_cast<std::uint8_t>(a.threshold));
        pnm::write(dir / frame_name("mask", i, "pgm"), mask);
        if (background)
            pnm::write(dir / frame_name("composite", i, "ppm"),
                       replace_background(frames[i], *background, mask));

        json line = {{"frame", i}, {"foreground", count_nonzero(mask)}};
        json hull = json::array();
        if (count_nonzero(mask) > 0)
            for (const Point &p : convex_hull(mask))
                hull.push_back({p.x, p.y});
        line["hull"] = hull;
        line["motion"] = nullptr;
        if (a.diff_threshold >= 0) {
            const ImageBuffer gray = grayscale(frames[i]);
            const ImageBuffer motion =
                frame_difference(gray, i == 0 ? gray : prev_gray,
                                 static_cast<std::uint8_t>(a.diff_threshold));
            pnm::write(dir / frame_name("motion", i, "pgm"), motion);
            line["motion"] = count_nonzero(motion);
            prev_gray = gray;
        }
        emit(out, line);
    }
    return kExitOk;
}

// ---------------------------------------------------------------- track

struct TrackArgs {
    std::string input;
    std::string roi;
    std::string out;
    std::string overlay;
    TrackConfig config;
};

void put_rgb(ImageBuffer &img, int x, int y, Rgb c) {
    if (x < 0 || y < 0 || x >= img.width() || y >= img.height())
        return;
    img.at(x, y, 0) = c.r;
    img.at(x, y, 1) = c.g;
    img.at(x, y, 2) = c.b;
}

void draw_line(ImageBuffer &img, int x0, int y0, int x1, int y1, Rgb c) {
    const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    for (;;) {
        put_rgb(img, x0, y0, c);
        if (x0 == x1 && y0 == y1)
            return;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y0 += sy;
        }
    }
}

ImageBuffer track_overlay(const ImageBuffer &gray, const std::vector<TrackState> &states) {
    ImageBuffer img(gray.width(), gray.height(), 3);
    for (int y = 0; y < gray.height(); ++y)
        for (int x = 0; x < gray.width(); ++x)
            for (int c = 0; c < 3; ++c)
                img.at(x, y, c) = gray.at(x, y);
    const Rgb path{255, 0, 0};
    const Rgb box{0, 255, 0};
    auto px = [](double v) { return static_cast<int>(std::floor(v + 0.5)); };
    for (std::size_t i = 1; i < states.size(); ++i)
        draw_line(img, px(states[i - 1].cx), px(states[i - 1].cy), px(states[i].cx),
                  px(states[i].cy), path);
    if (states.size() == 1)
        put_rgb(img, px(states[0].cx), px(states[0].cy), path);
    const Window &w = states.back().window;
    const int x1 = w.x + w.w - 1, y1 = w.y + w.h - 1;
    draw_line(img, w.x, w.y, x1, w.y, box);
    draw_line(img, x1, w.y, x1, y1, box);
    draw_line(img, x1, y1, w.x, y1, box);
    draw_line(img, w.x, y1, w.x, w.y, box);
    return img;
}

int cmd_track(const TrackArgs &a, std::ostream &out) {
    const auto r = parse_ints(a.roi, 4, "--roi");
    const Window roi{r[0], r[1], r[2], r[3]};
    require(a.config.bins >= 1 && a.config.bins <= 256, ErrorKind::InvalidInput,
            "--bins: must be 1-256");
    require(a.config.max_iter >= 1, ErrorKind::InvalidInput, "--max-iter: must be >= 1");
    require(a.config.eps > 0.0, ErrorKind::InvalidInput, "--eps: must be positive");

    GestureSequence frames = load_frame_directory(a.input);
    for (auto &f : frames)
        if (f.channels() == 3)
            f = grayscale(f);
    const ImageBuffer &first = frames.front();
    require(roi.w >= 1 && roi.h >= 1 && roi.x >= 0 && roi.y >= 0 &&
                roi.x + roi.w <= first.width() && roi.y + roi.h <= first.height(),
            ErrorKind::InvalidInput,
            "--roi: window " + a.roi + " is not inside the " + std::to_string(first.width()) +
                "x" + std::to_string(first.height()) + " frame");

    const fs::path csv_path(a.out);
    fs::path overlay_path(a.overlay);
    if (a.overlay.empty())
        overlay_path =
            csv_path.parent_path() / (csv_path.stem().string() + "_overlay.ppm");
    require_writable_parent(csv_path, "--out");
    require_writable_parent(overlay_path, "--overlay");

    const std::vector<TrackState> states = track_sequence(frames, roi, a.config);
    require(!states.front().lost, ErrorKind::LostTrack,
            "lost track on frame 0: the ROI histogram finds no mass in the first frame");

    {
        std::ofstream csv(csv_path, std::ios::binary);
        if (!csv)
            fail(ErrorKind::Io, "cannot write " + csv_path.string());
        write_track_csv(csv, states);
        if (!csv)
            fail(ErrorKind::Io, "short write to " + csv_path.string());
    }
    pnm::write(overlay_path, track_overlay(first, states));

    std::size_t converged = 0, lost = 0;
    for (const auto &s : states) {
        converged += s.converged ? 1 : 0;
        lost += s.lost ? 1 : 0;
    }
    emit(out, {{"frames", states.size()},
               {"converged", converged},
               {"lost", lost},
               {"csv", csv_path.string()},
               {"overlay", overlay_path.string()}});
    return kExitOk;
}

// ---------------------------------------------------------------- train

struct TrainArgs {
    std::string arch = "figure1";
    int input_size = 28;
    int channels = 1;
    std::string train_images, train_labels, test_images, test_labels;
    std::size_t synth = 0;
    std::size_t holdout = 200;
    std::uint64_t data_seed = 7;
    std::uint64_t seed = 0;
    TrainConfig config;
    std::string out;
    std::string history;
    bool print_params = false;
};

std::string with_commas(std::size_t n) {
    std::string s = std::to_string(n);
    for (int i = static_cast<int>(s.size()) - 3; i > 0; i -= 3)
        s.insert(static_cast<std::size_t>(i), ",");
    return s;
}

const char *keras_type(LayerKind kind) {
    switch (kind) {
    case LayerKind::Conv2d:
        return "Convolution2D";
    case LayerKind::MaxPool2x2:
        return "MaxPooling2D";
    case LayerKind::Dropout:
        return "Dropout";
    case LayerKind::Flatten:
        return "Flatten";
    case LayerKind::Dense:
        return "Dense";
    case LayerKind::Relu:
    case LayerKind::Softmax:
        break;
    }
    return "Activation";
}

// Shapes are printed channels-first, as the original table lists them.
std::string keras_shape(const Shape &s) {
    std::string r = "(None";
    if (s.size() == 3)
        for (std::size_t d : {s[2], s[0], s[1]})
            r += ", " + std::to_string(d);
    else
        for (std::size_t d : s)
            r += ", " + std::to_string(d);
    return r + ")";
}

void print_param_table(std::ostream &out, const ParamCount &count) {
    const std::string rule(65, '=');
    char line[160];
    std::snprintf(line, sizeof line, "%-33s%-22s%s\n", "Layer (type)", "Output Shape", "Param #");
    out << line << rule << '\n';
    for (const auto &l : count.layers) {
        const std::string name = l.name + " (" + keras_type(l.kind) + ")";
        std::snprintf(line, sizeof line, "%-33s%-22s%s\n", name.c_str(),
                      keras_shape(l.output_shape).c_str(), with_commas(l.params).c_str());
        out << line;
    }
    out << rule << '\n' << "Total params: " << with_commas(count.total) << '\n';
}

struct DigitSplit {
    DigitDataset train;
    std::optional<DigitDataset> heldout;
};

DigitSplit load_digits(const TrainArgs &a) {
    const bool use_idx = !a.train_images.empty() || !a.train_labels.empty();
    require(use_idx != (a.synth > 0), ErrorKind::InvalidInput,
            "train: give either --train-images/--train-labels or --synth N");
    DigitSplit split;
    if (a.synth > 0) {
        DigitDataset all = synth::digits(a.synth + a.holdout, a.data_seed);
        const auto n = static_cast<std::ptrdiff_t>(a.synth);
        split.train.images.assign(all.images.begin(), all.images.begin() + n);
        split.train.labels.assign(all.labels.begin(), all.labels.begin() + n);
        if (a.holdout > 0) {
            DigitDataset h;
            h.images.assign(all.images.begin() + n, all.images.end());
            h.labels.assign(all.labels.begin() + n, all.labels.end());
            split.heldout = std::move(h);
        }
        return split;
    }
    require(!a.train_images.empty() && !a.train_labels.empty(), ErrorKind::InvalidInput,
            "train: --train-images and --train-labels go together");
    require(a.test_images.empty() == a.test_labels.empty(), ErrorKind::InvalidInput,
            "train: --test-images and --test-labels go together");
    split.train = idx::load(a.train_images, a.train_labels);
    require(split.train.size() > 0, ErrorKind::InvalidInput, "train: training set is empty");
    if (!a.test_images.empty())
        split.heldout = idx::load(a.test_images, a.test_labels);
    return split;
}

int cmd_train(const TrainArgs &a, std::ostream &out) {
    require(a.arch == "figure1", ErrorKind::Unsupported,
            "--arch: only 'figure1' is available");
    require(a.input_size == 28 || a.input_size == 56, ErrorKind::InvalidInput,
            "--input-size: must be 28 or 56");
    require(a.channels == 1 || a.channels == 3, ErrorKind::InvalidInput,
            "--channels: must be 1 or 3");
    const InputShape input{a.input_size, a.input_size, a.channels};
    TrainConfig config = a.config;
    config.seed = a.seed + 1;
    config.validate();
    const auto specs = figure1_specs(10, config.conv_dropout, config.dense_dropout);

    if (a.print_params) {
        print_param_table(out, count_params(input, specs));
        return kExitOk;
    }

    require(!a.out.empty(), ErrorKind::InvalidInput, "train: --out is required");
    require_writable_parent(a.out, "--out");
    if (!a.history.empty())
        require_writable_parent(a.history, "--history");
    const DigitSplit digits = load_digits(a);
    const Dataset train_set = to_dataset(digits.train, input);
    std::optional<Dataset> heldout;
    if (digits.heldout)
        heldout = to_dataset(*digits.heldout, input);

    Network net(input, specs, init_params(input, specs, a.seed));
    const TrainResult result = train(net, train_set, config, [&](int epoch, double loss) {
        emit(out, {{"epoch", epoch}, {"loss", loss}});
    });
    const double train_acc = accuracy(net, train_set);
    const json heldout_acc = heldout ? json(accuracy(net, *heldout)) : json(nullptr);

    const json meta = {{"arch", a.arch},
                       {"epochs", config.epochs},
                       {"batch", config.batch_size},
                       {"lr", config.learning_rate},
                       {"momentum", config.momentum},
                       {"seed", a.seed}};
    model_io::write(a.out, model_io::from_network(net, meta));
    const json summary = {{"train_accuracy", train_acc},
                          {"heldout_accuracy", heldout_acc},
                          {"model", a.out}};
    if (!a.history.empty())
        write_json_file(a.history, {{"epoch_loss", result.epoch_loss},
                                    {"train_accuracy", train_acc},
                                    {"heldout_accuracy", heldout_acc}});
    emit(out, summary);
    return kExitOk;
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
    std::vector<std::string> models;
    std::string images;
    std::string labels;
    std::vector<std::string> frames;
};

int cmd_classify(const ClassifyArgs &a, std::ostream &out) {
    require(a.models.size() == 1 || a.models.size() == 2, ErrorKind::InvalidInput,
            "classify: give one or two --model files");
    require(a.images.empty() != a.frames.empty(), ErrorKind::InvalidInput,
            "classify: give either --images or --frames");
    require(a.labels.empty() || !a.images.empty(), ErrorKind::InvalidInput,
            "classify: --labels needs --images");

    std::vector<Network> nets;
    for (const auto &path : a.models)
        nets.push_back(model_io::to_network(model_io::read(path)));
    if (nets.size() == 2)
        require(nets[0].classes() == nets[1].classes(), ErrorKind::Format,
                "classify: the two models disagree on the number of classes");

    const int side = a.images.empty() ? kVolumeSide : idx::kSide;
    for (std::size_t m = 0; m < nets.size(); ++m) {
        const InputShape &in = nets[m].input();
        require(accepts(in, side), ErrorKind::Format,
                a.models[m] + ": architecture input " + shape_string(in.shape()) +
                    " does not fit " + std::to_string(side) + "x" + std::to_string(side) +
                    " samples");
    }

    // Per-sample inputs: one tensor per model since the two may differ in size.
    std::vector<std::vector<Tensor>> samples;
    std::vector<int> labels;
    if (!a.images.empty()) {
        const DigitDataset data =
            a.labels.empty() ? DigitDataset{idx::load_images(a.images), {}}
                             : idx::load(a.images, a.labels);
        labels = data.labels;
        for (const auto &img : data.images) {
            std::vector<Tensor> per_model;
            for (const auto &net : nets)
                per_model.push_back(image_to_sample(img, net.input()));
            samples.push_back(std::move(per_model));
        }
    } else {
        for (const auto &dir : a.frames) {
            const Tensor volume = build_volume(load_frame_directory(dir));
            std::vector<Tensor> per_model;
            for (const auto &net : nets)
                per_model.push_back(volume_to_sample(volume, net.input()));
            samples.push_back(std::move(per_model));
        }
    }

    std::size_t correct = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        std::vector<double> probs = nets[0].predict(samples[i][0]);
        std::size_t label = argmax(probs);
        if (nets.size() == 2) {
            FusedPrediction fused = fuse_predict(probs, nets[1].predict(samples[i][1]));
            probs = std::move(fused.probs);
            label = fused.label;
        }
        json line = {{"index", i}, {"probs", probs}, {"class", label}, {"label", nullptr}};
        if (!labels.empty()) {
            line["label"] = labels[i];
            correct += static_cast<int>(label) == labels[i] ? 1 : 0;
        }
        emit(out, line);
    }
    if (!labels.empty())
        emit(out, {{"accuracy", samples.empty() ? 0.0
                                                : static_cast<double>(correct) /
                                                      static_cast<double>(samples.size())},
                   {"samples", samples.size()}});
    return kExitOk;
}

// ---------------------------------------------------------------- vae

struct VaeInitArgs {
    std::string out;
    int hidden = 256;
    int latent = 2;
    std::uint64_t seed = 0;
    bool zero = false;
};

int cmd_vae_init(const VaeInitArgs &a, std::ostream &out) {
    require(a.hidden >= 1 && a.latent >= 1, ErrorKind::InvalidInput,
            "vae init: --hidden and --latent must be >= 1");
    require_writable_parent(a.out, "--out");
    const int dim = idx::kSide * idx::kSide;
    const VaeParams p = a.zero ? zero_vae(dim, a.hidden, a.latent)
                               : init_vae(dim, a.hidden, a.latent, a.seed);
    model_io::write(a.out, vae_to_model(p, {{"seed", a.seed}, {"zero", a.zero}}));
    emit(out, {{"model", a.out}, {"hidden", a.hidden}, {"latent", a.latent}});
    return kExitOk;
}

struct VaeTrainArgs {
    std::string model;
    std::string images;
    std::size_t synth = 0;
    std::uint64_t data_seed = 7;
    std::uint64_t seed = 0;
    VaeTrainConfig config;
    std::string out;
    std::string history;
};

int cmd_vae_train(const VaeTrainArgs &a, std::ostream &out) {
    require(!a.images.empty() != (a.synth > 0),
            ErrorKind::InvalidInput, "vae train: give either --images or --synth N");
    VaeTrainConfig config = a.config;
    config.seed = a.seed;
    config.validate();
    require_writable_parent(a.out, "--out");
    if (!a.history.empty())
        require_writable_parent(a.history, "--history");

    std::optional<VaeParams> start;
    if (!a.model.empty()) {
        start = vae_from_model(model_io::read(a.model));
        config.hidden = start->hidden;
        config.latent = start->latent;
    }
    const std::vector<ImageBuffer> images =
        a.images.empty() ? synth::digits(a.synth, a.data_seed).images : idx::load_images(a.images);
    require(!images.empty(), ErrorKind::InvalidInput, "vae train: no training images");
    const auto data = to_unit_vectors(images);
    if (start)
        require(static_cast<std::size_t>(start->input_dim) == data.front().size(),
                ErrorKind::InvalidInput, "vae train: model input size does not match the images");

    auto on_epoch = [&](int epoch, double loss) {
        emit(out, {{"epoch", epoch}, {"neg_elbo", loss}});
    };
    const VaeTrainResult result = start ? train_vae(*start, data, config, on_epoch)
                                        : train_vae(data, config, on_epoch);
    const json meta = {{"epochs", config.epochs},
                       {"batch", config.batch_size},
                       {"lr", config.learning_rate},
                       {"momentum", config.momentum},
                       {"seed", a.seed}};
    model_io::write(a.out, vae_to_model(result.params, meta));
    if (!a.history.empty())
        write_json_file(a.history, {{"epoch_loss", result.epoch_loss}});
    emit(out, {{"model", a.out}, {"final_neg_elbo", result.epoch_loss.back()}});
    return kExitOk;
}

struct VaeGridArgs {
    std::string model;
    int grid = 15;
    double radius = 2.0;
    std::string out;
};

int cmd_vae_grid(const VaeGridArgs &a, std::ostream &out) {
    require(a.grid >= 1, ErrorKind::InvalidInput, "--grid: must be >= 1");
    require(a.radius > 0.0 && std::isfinite(a.radius), ErrorKind::InvalidInput,
            "--radius: must be positive");
    require_writable_parent(a.out, "--out");
    const VaeParams params = vae_from_model(model_io::read(a.model));
    const int side = static_cast<int>(std::lround(std::sqrt(params.input_dim)));
    require(side * side == params.input_dim, ErrorKind::Unsupported,
            "vae grid: model output is not a square image");
    const ImageBuffer mosaic = latent_grid(params, a.grid, a.radius, side);
    pnm::write(a.out, mosaic);
    emit(out, {{"out", a.out}, {"width", mosaic.width()}, {"height", mosaic.height()}});
    return kExitOk;
}

int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Format:
        return kExitFormat;
    case ErrorKind::Numeric:
    case ErrorKind::LostTrack:
    case ErrorKind::DegenerateFusion:
        return kExitNumeric;
    case ErrorKind::InvalidInput:
    case ErrorKind::EmptyRegion:
    case ErrorKind::Io:
    case ErrorKind::Unsupported:
        break;
    }
    return kExitUsage;
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Hand-gesture segmentation, tracking and recognition toolkit", "gesture"};
    app.fallthrough();
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);
    app.set_config("--config", "", "JSON file of flag values; command-line flags take precedence");
    app.config_formatter(std::make_shared<cli::JsonConfig>(&app));

    SegmentArgs seg;
    auto *segment = app.add_subcommand("segment", "Colour-key segmentation of a frame directory");
    segment->add_option("--input", seg.input, "Directory of frame_NNNN.ppm files")->required();
    segment->add_option("--key", seg.key, "Key colour R,G,B")->capture_default_str();
    segment->add_option("--threshold", seg.threshold, "Colour distance threshold")
        ->check(CLI::Range(0, 255))
        ->capture_default_str();
    segment->add_option("--background", seg.background, "Replacement background PPM");
    segment->add_option("--out", seg.out, "Output directory")->required();
    segment->add_option("--diff-threshold", seg.diff_threshold,
                        "Also write frame-difference masks at this threshold")
        ->check(CLI::Range(0, 255));

    TrackArgs trk;
    auto *track = app.add_subcommand("track", "CamShift tracking over a frame directory");
    track->add_option("--input", trk.input, "Directory of frame_NNNN.pgm/.ppm files")->required();
    track->add_option("--roi", trk.roi, "Initial window x,y,w,h on frame 0")->required();
    track->add_option("--out", trk.out, "Track CSV path")->required();
    track->add_option("--overlay", trk.overlay, "Trajectory overlay PPM (default <out>_overlay.ppm)");
    track->add_option("--bins", trk.config.bins, "Histogram bins")->capture_default_str();
    track->add_option("--max-iter", trk.config.max_iter, "Mean-shift iterations per frame")
        ->capture_default_str();
    track->add_option("--eps", trk.config.eps, "Convergence threshold in pixels")
        ->capture_default_str();

    TrainArgs trn;
    auto *trainc = app.add_subcommand("train", "Train the digit classifier");
    trainc->add_option("--arch", trn.arch, "Architecture")->capture_default_str();
    trainc->add_option("--input-size", trn.input_size, "Network input side, 28 or 56")
        ->capture_default_str();
    trainc->add_option("--channels", trn.channels, "Input channels, 1 or 3")->capture_default_str();
    trainc->add_option("--train-images", trn.train_images, "IDX image file");
    trainc->add_option("--train-labels", trn.train_labels, "IDX label file");
    trainc->add_option("--test-images", trn.test_images, "Held-out IDX image file");
    trainc->add_option("--test-labels", trn.test_labels, "Held-out IDX label file");
    trainc->add_option("--synth", trn.synth, "Train on N synthetic digits");
    trainc->add_option("--holdout", trn.holdout, "Synthetic held-out samples")
        ->capture_default_str();
    trainc->add_option("--data-seed", trn.data_seed, "Synthetic data seed")->capture_default_str();
    trainc->add_option("--seed", trn.seed, "Initialisation seed; training uses seed + 1")
        ->capture_default_str();
    trainc->add_option("--epochs", trn.config.epochs)->capture_default_str();
    trainc->add_option("--batch", trn.config.batch_size)->capture_default_str();
    trainc->add_option("--lr", trn.config.learning_rate)->capture_default_str();
    trainc->add_option("--momentum", trn.config.momentum)->capture_default_str();
    trainc->add_option("--conv-dropout", trn.config.conv_dropout)->capture_default_str();
    trainc->add_option("--dense-dropout", trn.config.dense_dropout)->capture_default_str();
    trainc->add_option("--out", trn.out, "Model file to write");
    trainc->add_option("--history", trn.history, "Loss history JSON to write");
    trainc->add_flag("--print-params", trn.print_params,
                     "Print the parameter table and exit without training");

    ClassifyArgs cls;
    auto *classify = app.add_subcommand("classify", "Classify digits or gesture sequences");
    classify->add_option("--model", cls.models, "One or two classifier model files")
        ->required()
        ->expected(1, 2);
    classify->add_option("--images", cls.images, "IDX image file");
    classify->add_option("--labels", cls.labels, "IDX label file for accuracy");
    classify->add_option("--frames", cls.frames, "Frame directories, one sample each")
        ->expected(1, -1);

    auto *vae = app.add_subcommand("vae", "Variational autoencoder");
    vae->require_subcommand(1);

    VaeInitArgs vi;
    auto *vinit = vae->add_subcommand("init", "Write a freshly initialised VAE");
    vinit->add_option("--out", vi.out, "Model file to write")->required();
    vinit->add_option("--hidden", vi.hidden)->capture_default_str();
    vinit->add_option("--latent", vi.latent)->capture_default_str();
    vinit->add_option("--seed", vi.seed)->capture_default_str();
    vinit->add_flag("--zero", vi.zero, "All parameters zero");

    VaeTrainArgs vt;
    auto *vtrain = vae->add_subcommand("train", "Train the VAE on digit images");
    vtrain->add_option("--model", vt.model, "Start from this VAE instead of a fresh one");
    vtrain->add_option("--images", vt.images, "IDX image file");
    vtrain->add_option("--synth", vt.synth, "Train on N synthetic digits");
    vtrain->add_option("--data-seed", vt.data_seed)->capture_default_str();
    vtrain->add_option("--seed", vt.seed)->capture_default_str();
    vtrain->add_option("--hidden", vt.config.hidden)->capture_default_str();
    vtrain->add_option("--latent", vt.config.latent)->capture_default_str();
    vtrain->add_option("--epochs", vt.config.epochs)->capture_default_str();
    vtrain->add_option("--batch", vt.config.batch_size)->capture_default_str();
    vtrain->add_option("--lr", vt.config.learning_rate)->capture_default_str();
    vtrain->add_option("--momentum", vt.config.momentum)->capture_default_str();
    vtrain->add_option("--out", vt.out, "Model file to write")->required();
    vtrain->add_option("--history", vt.history, "Loss history JSON to write");

    VaeGridArgs vg;
    auto *vgrid = vae->add_subcommand("grid", "Decode a grid of latent points into a mosaic");
    vgrid->add_option("--model", vg.model, "VAE model file")->required();
    vgrid->add_option("--grid", vg.grid, "Cells per side")->capture_default_str();
    vgrid->add_option("--radius", vg.radius, "Latent half-extent")->capture_default_str();
    vgrid->add_option("--out", vg.out, "Mosaic PGM to write")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (segment->parsed())
            return cmd_segment(seg, out);
        if (track->parsed())
            return cmd_track(trk, out);
        if (trainc->parsed())
            return cmd_train(trn, out);
        if (classify->parsed())
            return cmd_classify(cls, out);
        if (vinit->parsed())
            return cmd_vae_init(vi, out);
        if (vtrain->parsed())
            return cmd_vae_train(vt, out);
        if (vgrid->parsed())
            return cmd_vae_grid(vg, out);
    } catch (const Error &e) {
        err << "gesture: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const fs::filesystem_error &e) {
        err << "gesture: io: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "gesture: internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    err << "gesture: no command selected\n";
    return kExitUsage;
}

} // namespace gesture
