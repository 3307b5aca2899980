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

#include "gesture/vae.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gesture/error.hpp"
#include "gesture/kernels.hpp"
#include "gesture/optimizer.hpp"

namespace gesture {

namespace {

enum Slot { EncW, EncB, MuW, MuB, LvW, LvB, DecW, DecB, OutW, OutB, SlotCount };

double sigmoid(double a) { return 1.0 / (1.0 + std::exp(-a)); }

double clamp_prob(double r) { return std::clamp(r, kBernoulliClamp, 1.0 - kBernoulliClamp); }

std::vector<double> affine(std::span<const double> in, const Tensor &w, const Tensor &b) {
    std::vector<double> out(b.size());
    kernels::parallel::dense_forward(in, w.data(), b.data(), out);
    return out;
}

void relu_inplace(std::vector<double> &v) {
    for (double &x : v)
        x = x > 0.0 ? x : 0.0;
}

void check_params(const VaeParams &p) {
    const auto shapes = p.expected_shapes();
    require(p.tensors.size() == shapes.size(), ErrorKind::InvalidInput,
            "VAE parameters: expected " + std::to_string(shapes.size()) + " tensors");
    for (std::size_t i = 0; i < shapes.size(); ++i)
        require(p.tensors[i].shape() == shapes[i], ErrorKind::InvalidInput,
                "VAE parameter " + std::to_string(i) + " has shape " +
                    shape_string(p.tensors[i].shape()) + ", expected " + shape_string(shapes[i]));
}

// Forward pass keeping everything the backward pass needs.
struct VaeTrace {
    std::vector<double> h1, mu, log_var, z, h2, recon;
};

VaeTrace run(const VaeParams &p, std::span<const double> x, std::span<const double> eps) {
    const auto &t = p.tensors;
    VaeTrace tr;
    tr.h1 = affine(x, t[EncW], t[EncB]);
    relu_inplace(tr.h1);
    tr.mu = affine(tr.h1, t[MuW], t[MuB]);
    tr.log_var = affine(tr.h1, t[LvW], t[LvB]);
    tr.z = reparameterize(tr.mu, tr.log_var, eps);
    tr.h2 = affine(tr.z, t[DecW], t[DecB]);
    relu_inplace(tr.h2);
    tr.recon = affine(tr.h2, t[OutW], t[OutB]);
    for (double &a : tr.recon)
        a = sigmoid(a);
    return tr;
}

void check_batch(const VaeParams &p, std::span<const std::vector<double>> xs,
                 std::span<const std::vector<double>> eps) {
    require(!xs.empty() && xs.size() == eps.size(), ErrorKind::InvalidInput,
            "VAE batch: inputs and noise must be non-empty and equal in count");
    for (std::size_t b = 0; b < xs.size(); ++b) {
        require(xs[b].size() == static_cast<std::size_t>(p.input_dim), ErrorKind::InvalidInput,
                "VAE batch: input length mismatch");
        require(eps[b].size() == static_cast<std::size_t>(p.latent), ErrorKind::InvalidInput,
                "VAE batch: noise length mismatch");
    }
}

std::vector<Tensor> glorot(const VaeParams &p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Tensor> out;
    for (const auto &s : p.expected_shapes()) {
        Tensor t(s);
        if (s.size() == 2) {
            const double bound = std::sqrt(6.0 / static_cast<double>(s[0] + s[1]));
            std::uniform_real_distribution<double> u(-bound, bound);
            for (double &v : t.values())
                v = u(rng);
        }
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace

std::vector<Shape> VaeParams::expected_shapes() const {
    const auto n = static_cast<std::size_t>(input_dim);
    const auto h = static_cast<std::size_t>(hidden);
    const auto l = static_cast<std::size_t>(latent);
    return {{n, h}, {h}, {h, l}, {l}, {h, l}, {l}, {l, h}, {h}, {h, n}, {n}};
}

VaeParams init_vae(int input_dim, int hidden, int latent, std::uint64_t seed) {
    require(input_dim >= 1 && hidden >= 1 && latent >= 1, ErrorKind::InvalidInput,
            "VAE dimensions must be positive");
    VaeParams p{input_dim, hidden, latent, {}};
    p.tensors = glorot(p, seed);
    return p;
}

VaeParams zero_vae(int input_dim, int hidden, int latent) {
    require(input_dim >= 1 && hidden >= 1 && latent >= 1, ErrorKind::InvalidInput,
            "VAE dimensions must be positive");
    VaeParams p{input_dim, hidden, latent, {}};
    for (const auto &s : p.expected_shapes())
        p.tensors.emplace_back(s, 0.0);
    return p;
}

LatentCode encode(std::span<const double> x, const VaeParams &params) {
    check_params(params);
    require(x.size() == static_cast<std::size_t>(params.input_dim), ErrorKind::InvalidInput,
            "encode: input length " + std::to_string(x.size()) + " != " +
                std::to_string(params.input_dim));
    const auto &t = params.tensors;
    auto h = affine(x, t[EncW], t[EncB]);
    relu_inplace(h);
    LatentCode code;
    code.mu = affine(h, t[MuW], t[MuB]);
    code.log_var = affine(h, t[LvW], t[LvB]);
    code.z = code.mu;
    return code;
}

std::vector<double> reparameterize(std::span<const double> mu, std::span<const double> log_var,
                                   std::span<const double> eps) {
    require(mu.size() == log_var.size() && mu.size() == eps.size(), ErrorKind::InvalidInput,
            "reparameterize: length mismatch");
    std::vector<double> z(mu.size());
    for (std::size_t j = 0; j < z.size(); ++j)
        z[j] = mu[j] + std::exp(0.5 * log_var[j]) * eps[j];
    return z;
}

std::vector<double> decode(std::span<const double> z, const VaeParams &params) {
    check_params(params);
    require(z.size() == static_cast<std::size_t>(params.latent), ErrorKind::InvalidInput,
            "decode: latent length mismatch");
    const auto &t = params.tensors;
    auto h = affine(z, t[DecW], t[DecB]);
    relu_inplace(h);
    auto r = affine(h, t[OutW], t[OutB]);
    for (double &a : r)
        a = sigmoid(a);
    return r;
}

double kl_gaussian(std::span<const double> mu, std::span<const double> log_var) {
    require(mu.size() == log_var.size(), ErrorKind::InvalidInput, "kl_gaussian: length mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < mu.size(); ++j)
        s += 1.0 + log_var[j] - mu[j] * mu[j] - std::exp(log_var[j]);
    return -0.5 * s;
}

double elbo(std::span<const double> x, std::span<const double> recon, std::span<const double> mu,
            std::span<const double> log_var) {
    require(x.size() == recon.size(), ErrorKind::InvalidInput, "elbo: length mismatch");
    double ll = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = clamp_prob(recon[i]);
        ll += x[i] * std::log(r) + (1.0 - x[i]) * std::log(1.0 - r);
    }
    return ll - kl_gaussian(mu, log_var);
}

VaeGradient vae_backprop(const VaeParams &params, std::span<const std::vector<double>> xs,
                         std::span<const std::vector<double>> eps) {
    check_params(params);
    check_batch(params, xs, eps);
    const auto &t = params.tensors;
    VaeGradient out;
    for (const auto &s : params.expected_shapes())
        out.grads.emplace_back(s);
    auto &g = out.grads;

    const auto n = static_cast<std::size_t>(params.input_dim);
    const auto h = static_cast<std::size_t>(params.hidden);
    const auto l = static_cast<std::size_t>(params.latent);
    std::vector<double> d_out(n), d_h2(h), d_z(l), d_mu(l), d_lv(l), d_h1(h), d_h1_lv(h);
    for (std::size_t b = 0; b < xs.size(); ++b) {
        const auto &x = xs[b];
        const VaeTrace tr = run(params, x, eps[b]);
        out.loss -= elbo(x, tr.recon, tr.mu, tr.log_var);

        // Bernoulli term w.r.t. the pre-sigmoid activation; zero where clamped.
        for (std::size_t i = 0; i < n; ++i) {
            const double r = tr.recon[i];
            d_out[i] = (r > kBernoulliClamp && r < 1.0 - kBernoulliClamp) ? r - x[i] : 0.0;
        }
        kernels::parallel::dense_backward(tr.h2, t[OutW].data(), d_out, d_h2, g[OutW].data(),
                                          g[OutB].data());
        for (std::size_t k = 0; k < h; ++k)
            if (!(tr.h2[k] > 0.0))
                d_h2[k] = 0.0;
        kernels::parallel::dense_backward(tr.z, t[DecW].data(), d_h2, d_z, g[DecW].data(),
                                          g[DecB].data());
        for (std::size_t j = 0; j < l; ++j) {
            const double sigma = std::exp(0.5 * tr.log_var[j]);
            d_mu[j] = d_z[j] + tr.mu[j];
            d_lv[j] = d_z[j] * eps[b][j] * 0.5 * sigma + 0.5 * (std::exp(tr.log_var[j]) - 1.0);
        }
        kernels::parallel::dense_backward(tr.h1, t[MuW].data(), d_mu, d_h1, g[MuW].data(),
                                          g[MuB].data());
        kernels::parallel::dense_backward(tr.h1, t[LvW].data(), d_lv, d_h1_lv, g[LvW].data(),
                                          g[LvB].data());
        for (std::size_t k = 0; k < h; ++k)
            d_h1[k] = tr.h1[k] > 0.0 ? d_h1[k] + d_h1_lv[k] : 0.0;
        kernels::parallel::dense_backward(x, t[EncW].data(), d_h1, {}, g[EncW].data(),
                                          g[EncB].data());
    }
    const double scale = 1.0 / static_cast<double>(xs.size());
    out.loss *= scale;
    for (auto &gt : g)
        for (double &v : gt.values())
            v *= scale;
    return out;
}

double vae_loss(const VaeParams &params, std::span<const std::vector<double>> xs,
                std::span<const std::vector<double>> eps) {
    check_params(params);
    check_batch(params, xs, eps);
    double loss = 0.0;
    for (std::size_t b = 0; b < xs.size(); ++b) {
        const VaeTrace tr = run(params, xs[b], eps[b]);
        loss -= elbo(xs[b], tr.recon, tr.mu, tr.log_var);
    }
    return loss / static_cast<double>(xs.size());
}

void VaeTrainConfig::validate() const {
    require(hidden >= 1 && latent >= 1, ErrorKind::InvalidInput, "VAE sizes must be positive");
    require(learning_rate > 0.0, ErrorKind::InvalidInput, "learning rate must be positive");
    require(momentum >= 0.0 && momentum < 1.0, ErrorKind::InvalidInput,
            "momentum must be in [0, 1)");
    require(batch_size >= 1, ErrorKind::InvalidInput, "batch size must be positive");
    require(epochs >= 1, ErrorKind::InvalidInput, "epochs must be positive");
}

VaeTrainResult train_vae(const std::vector<std::vector<double>> &data, const VaeTrainConfig &config,
                         const std::function<void(int, double)> &on_epoch) {
    require(!data.empty(), ErrorKind::InvalidInput, "train_vae: empty dataset");
    config.validate();
    return train_vae(init_vae(static_cast<int>(data.front().size()), config.hidden, config.latent,
                              config.seed),
                     data, config, on_epoch);
}

VaeTrainResult train_vae(VaeParams params, const std::vector<std::vector<double>> &data,
                         const VaeTrainConfig &config,
                         const std::function<void(int, double)> &on_epoch) {
    config.validate();
    check_params(params);
    require(!data.empty(), ErrorKind::InvalidInput, "train_vae: empty dataset");
    for (const auto &x : data) {
        require(x.size() == static_cast<std::size_t>(params.input_dim), ErrorKind::InvalidInput,
                "train_vae: sample length mismatch");
        for (double v : x)
            require(v >= 0.0 && v <= 1.0, ErrorKind::InvalidInput,
                    "train_vae: inputs must lie in [0, 1]");
    }

    // Separate streams for shuffling and noise keep either reproducible.
    std::mt19937_64 shuffle_rng(config.seed ^ 0x5bd1e995ULL);
    std::mt19937_64 noise_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> normal(0.0, 1.0);

    VaeTrainResult result{std::move(params), {}};
    OptimizerState state = OptimizerState::zeros_like(result.params.tensors);
    std::vector<std::size_t> order(data.size());
    const auto batch = static_cast<std::size_t>(config.batch_size);
    std::vector<std::vector<double>> xs, eps;
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), shuffle_rng);
        double total = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < order.size(); start += batch) {
            const std::size_t end = std::min(order.size(), start + batch);
            xs.clear();
            eps.clear();
            for (std::size_t i = start; i < end; ++i) {
                xs.push_back(data[order[i]]);
                std::vector<double> e(static_cast<std::size_t>(result.params.latent));
                for (double &v : e)
                    v = normal(noise_rng);
                eps.push_back(std::move(e));
            }
            const auto grad = vae_backprop(result.params, xs, eps);
            if (!std::isfinite(grad.loss))
                fail(ErrorKind::Numeric,
                     "VAE loss became non-finite in epoch " + std::to_string(epoch));
            nag_step(result.params.tensors, grad.grads, state, config.learning_rate,
                     config.momentum);
            total += grad.loss;
            ++batches;
        }
        const double loss = total / static_cast<double>(batches);
        result.epoch_loss.push_back(loss);
        if (on_epoch)
            on_epoch(epoch, loss);
    }
    return result;
}

double grid_coordinate(int i, int grid, double radius) {
    if (grid <= 1)
        return 0.0;
    return -radius + 2.0 * radius * static_cast<double>(i) / static_cast<double>(grid - 1);
}

ImageBuffer latent_grid(const VaeParams &params, int grid, double radius, int side) {
    if (params.latent != 2)
        fail(ErrorKind::Unsupported,
             "latent_grid needs a 2-D latent space, model has " + std::to_string(params.latent));
    require(grid >= 1, ErrorKind::InvalidInput, "latent_grid: grid must be positive");
    require(radius >= 0.0, ErrorKind::InvalidInput, "latent_grid: radius must be non-negative");
    require(side >= 1 && side * side == params.input_dim, ErrorKind::InvalidInput,
            "latent_grid: decoder output is not a side x side image");
    check_params(params);

    ImageBuffer mosaic(grid * side, grid * side, 1);
    for (int gy = 0; gy < grid; ++gy)
        for (int gx = 0; gx < grid; ++gx) {
            const double z[2] = {grid_coordinate(gx, grid, radius),
                                 grid_coordinate(gy, grid, radius)};
            const auto tile = decode(z, params);
            for (int y = 0; y < side; ++y)
                for (int x = 0; x < side; ++x)
                    mosaic.at(gx * side + x, gy * side + y) = static_cast<std::uint8_t>(
                        std::floor(255.0 * tile[static_cast<std::size_t>(y * side + x)] + 0.5));
        }
    return mosaic;
}

model_io::ModelFile vae_to_model(const VaeParams &params, const nlohmann::json &meta) {
    check_params(params);
    model_io::ModelFile m;
    m.header = {{"kind", "vae"},
                {"input_dim", params.input_dim},
                {"hidden", params.hidden},
                {"latent", params.latent},
                {"meta", meta}};
    m.tensors = params.tensors;
    return m;
}

VaeParams vae_from_model(const model_io::ModelFile &model) {
    const auto &h = model.header;
    if (h.value("kind", "") != "vae")
        fail(ErrorKind::Format, "model is not a VAE (kind '" + h.value("kind", "") + "')");
    VaeParams p;
    try {
        p.input_dim = h.at("input_dim").get<int>();
        p.hidden = h.at("hidden").get<int>();
        p.latent = h.at("latent").get<int>();
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorKind::Format, std::string("VAE header: ") + e.what());
    }
    if (p.input_dim < 1 || p.hidden < 1 || p.latent < 1)
        fail(ErrorKind::Format, "VAE header: dimensions must be positive");
    p.tensors = model.tensors;
    try {
        check_params(p);
    } catch (const Error &e) {
        fail(ErrorKind::Format, e.what());
    }
    return p;
}

} // namespace gesture
