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

#ifndef GESTURE_VAE_HPP
#define GESTURE_VAE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gesture/image.hpp"
#include "gesture/model_io.hpp"
#include "gesture/tensor.hpp"

namespace gesture {

/// Fully connected VAE: x -> relu(hidden) -> (mu, log_var); z -> relu(hidden)
/// -> sigmoid Bernoulli means.
struct VaeParams {
    int input_dim = 784;
    int hidden = 256;
    int latent = 2;
    /// enc_w, enc_b, mu_w, mu_b, logvar_w, logvar_b, dec_w, dec_b, out_w, out_b
    std::vector<Tensor> tensors;

    std::vector<Shape> expected_shapes() const;
};

/// Glorot-uniform weights, zero biases.
VaeParams init_vae(int input_dim, int hidden, int latent, std::uint64_t seed);
VaeParams zero_vae(int input_dim, int hidden, int latent);

struct LatentCode {
    std::vector<double> mu;
    std::vector<double> log_var;
    std::vector<double> z;
};

inline constexpr double kBernoulliClamp = 1e-7;

LatentCode encode(std::span<const double> x, const VaeParams &params);
/// mu + exp(log_var / 2) * eps, element-wise.
std::vector<double> reparameterize(std::span<const double> mu, std::span<const double> log_var,
                                   std::span<const double> eps);
std::vector<double> decode(std::span<const double> z, const VaeParams &params);

/// KL(N(mu, sigma^2) || N(0, I)) = -1/2 sum(1 + log_var - mu^2 - exp(log_var)).
double kl_gaussian(std::span<const double> mu, std::span<const double> log_var);

/// sum x log r + (1 - x) log(1 - r) - KL, with r clamped to [1e-7, 1 - 1e-7].
double elbo(std::span<const double> x, std::span<const double> recon, std::span<const double> mu,
            std::span<const double> log_var);

struct VaeGradient {
    std::vector<Tensor> grads;
    double loss = 0.0; // mean negative ELBO
};

/// Exact gradient of the mean negative ELBO for a batch, with the noise for
/// sample b given as eps[b] (frozen, so the loss is deterministic).
VaeGradient vae_backprop(const VaeParams &params, std::span<const std::vector<double>> xs,
                         std::span<const std::vector<double>> eps);
double vae_loss(const VaeParams &params, std::span<const std::vector<double>> xs,
                std::span<const std::vector<double>> eps);

struct VaeTrainConfig {
    int hidden = 256;
    int latent = 2;
    double learning_rate = 1e-3;
    double momentum = 0.9;
    int batch_size = 20;
    int epochs = 20;
    std::uint64_t seed = 0;

    void validate() const;
};

struct VaeTrainResult {
    VaeParams params;
    std::vector<double> epoch_loss; // mean negative ELBO per epoch
};

/// NAG on the mean negative ELBO, one seeded noise draw per sample per step.
VaeTrainResult train_vae(const std::vector<std::vector<double>> &data, const VaeTrainConfig &config,
                         const std::function<void(int, double)> &on_epoch = {});
/// Continues training from existing parameters.
VaeTrainResult train_vae(VaeParams params, const std::vector<std::vector<double>> &data,
                         const VaeTrainConfig &config,
                         const std::function<void(int, double)> &on_epoch = {});

/// Decodes a grid x grid lattice over [-radius, radius]^2 (no sampling) and
/// tiles the side x side reconstructions into one grayscale mosaic. Column
/// index follows z0, row index z1. Requires a 2-D latent space.
ImageBuffer latent_grid(const VaeParams &params, int grid, double radius, int side);

/// Latent coordinate of lattice index i.
double grid_coordinate(int i, int grid, double radius);

model_io::ModelFile vae_to_model(const VaeParams &params,
                                 const nlohmann::json &meta = nlohmann::json::object());
VaeParams vae_from_model(const model_io::ModelFile &model);

} // namespace gesture

#endif
