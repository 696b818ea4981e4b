/* Copyright 2026 The GyroMoE Authors
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

#include "gyromoe/de/de_expert.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "gyromoe/diff/ops.hpp"
#include "gyromoe/error.hpp"
#include "gyromoe/mae/checkpoint.hpp"
#include "gyromoe/ore/losses.hpp"

namespace gyromoe::de {

std::string to_string(WeightShare share) {
  switch (share) {
    case WeightShare::None: return "none";
    case WeightShare::Encoder: return "encoder";
    case WeightShare::Decoder: return "decoder";
    case WeightShare::Both: return "both";
  }
  return "both";
}

WeightShare parse_weight_share(const std::string& text) {
  if (text == "none") return WeightShare::None;
  if (text == "encoder") return WeightShare::Encoder;
  if (text == "decoder") return WeightShare::Decoder;
  if (text == "both") return WeightShare::Both;
  throw ConfigError("weight_share must be one of none|encoder|decoder|both, got '" + text + "'");
}

namespace {

const std::string kBackbonePrefix = "backbone.";

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const std::string& meta_at(const std::map<std::string, std::string>& meta, const std::string& key) {
  const auto it = meta.find(key);
  if (it == meta.end()) throw FormatError("checkpoint metadata lacks '" + key + "'");
  return it->second;
}

bool shares_encoder(WeightShare s) { return s == WeightShare::Encoder || s == WeightShare::Both; }
bool shares_decoder(WeightShare s) { return s == WeightShare::Decoder || s == WeightShare::Both; }

std::string enc_prefix(WeightShare s, char branch) {
  return shares_encoder(s) ? "enc." : std::string(1, branch) + ".enc.";
}
std::string dec_prefix(WeightShare s, char branch) {
  return shares_decoder(s) ? "dec." : std::string(1, branch) + ".dec.";
}

mae::ParamStore fresh_params(const DeConfig& cfg) {
  cfg.validate();
  mae::ParamStore store;
  std::mt19937_64 rng(cfg.seed);
  const auto& b = cfg.backbone;
  mae::init_encoder_params(store, enc_prefix(cfg.weight_share, 'a'), b, rng);
  if (!shares_encoder(cfg.weight_share)) mae::init_encoder_params(store, enc_prefix(cfg.weight_share, 'b'), b, rng);
  mae::init_decoder_params(store, dec_prefix(cfg.weight_share, 'a'), b, rng);
  if (!shares_decoder(cfg.weight_share)) mae::init_decoder_params(store, dec_prefix(cfg.weight_share, 'b'), b, rng);
  return store;
}

mae::Backbone bind(mae::ParamStore& store, const DeConfig& cfg, char branch) {
  return mae::Backbone{cfg.backbone, mae::bind_encoder(store, enc_prefix(cfg.weight_share, branch), cfg.backbone),
                       mae::bind_decoder(store, dec_prefix(cfg.weight_share, branch), cfg.backbone)};
}

void clamp_param(diff::Param* p, double lo, double hi) {
  if (p == nullptr) return;
  for (double& v : p->value.data()) v = std::clamp(v, lo, hi);
}

}  // namespace

mae::BackboneConfig DeConfig::default_backbone() {
  mae::BackboneConfig b;
  b.gd_placement = mae::GdPlacement::None;
  return b;
}

CrossMaskPair DeConfig::masks() const {
  return make_masks(mask_pattern, backbone.num_patches(), mask_ratio, seed);
}

void DeConfig::validate() const {
  backbone.validate();
  if (backbone.num_patches() < 2) throw ContractError("denoiser needs at least 2 patches per segment");
  if (!(mask_ratio > 0.0 && mask_ratio < 1.0)) throw ContractError("mask ratio must lie in (0, 1)");
  if (batch_size == 0) throw ContractError("de: batch size must be positive");
  if (!(sample_rate > 0.0)) throw ContractError("de: sample rate must be positive");
  if (!(adam.decay_floor > 0.0 && adam.decay_floor <= 1.0)) throw ContractError("de: decay floor must lie in (0, 1]");
}

std::map<std::string, std::string> DeConfig::to_meta() const {
  auto meta = backbone.to_meta(kBackbonePrefix);
  meta["model"] = "de";
  meta["weight_share"] = to_string(weight_share);
  meta["mask_pattern"] = to_string(mask_pattern);
  meta["mask_ratio"] = num(mask_ratio);
  meta["learning_rate"] = num(adam.learning_rate);
  meta["clip_norm"] = num(adam.clip_norm);
  meta["decay_floor"] = num(adam.decay_floor);
  meta["batch_size"] = std::to_string(batch_size);
  meta["sample_rate"] = num(sample_rate);
  meta["seed"] = std::to_string(seed);
  return meta;
}

DeConfig DeConfig::from_meta(const std::map<std::string, std::string>& meta) {
  if (meta_at(meta, "model") != "de") throw FormatError("checkpoint does not hold a denoise expert");
  DeConfig c;
  c.backbone = mae::BackboneConfig::from_meta(meta, kBackbonePrefix);
  c.weight_share = parse_weight_share(meta_at(meta, "weight_share"));
  c.mask_pattern = parse_mask_pattern(meta_at(meta, "mask_pattern"));
  c.mask_ratio = std::stod(meta_at(meta, "mask_ratio"));
  c.adam.learning_rate = std::stod(meta_at(meta, "learning_rate"));
  c.adam.clip_norm = std::stod(meta_at(meta, "clip_norm"));
  c.adam.decay_floor = std::stod(meta_at(meta, "decay_floor"));
  c.batch_size = std::stoul(meta_at(meta, "batch_size"));
  c.sample_rate = std::stod(meta_at(meta, "sample_rate"));
  c.seed = std::stoull(meta_at(meta, "seed"));
  c.validate();
  return c;
}

Standardizer Standardizer::fit(std::span<const double> x) {
  Standardizer s;
  if (x.empty()) return s;
  s.mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - s.mean) * (v - s.mean);
  const double sd = std::sqrt(ss / static_cast<double>(x.size()));
  s.scale = sd > 0.0 ? sd : 1.0;
  return s;
}

std::vector<double> Standardizer::apply(std::span<const double> x) const {
  std::vector<double> out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), [this](double v) { return (v - mean) / scale; });
  return out;
}

std::vector<double> Standardizer::invert(std::span<const double> z) const {
  std::vector<double> out(z.size());
  std::transform(z.begin(), z.end(), out.begin(), [this](double v) { return v * scale + mean; });
  return out;
}

DeExpert::DeExpert(DeConfig config) : DeExpert(config, fresh_params(config)) {}

DeExpert::DeExpert(DeConfig config, mae::ParamStore params)
    : config_(std::move(config)),
      params_(std::move(params)),
      branch_a_(bind(params_, config_, 'a')),
      branch_b_(bind(params_, config_, 'b')),
      masks_(config_.masks()) {
  config_.validate();
}

std::pair<diff::Var, diff::Var> DeExpert::dual_forward(diff::Graph& g, std::span<const double> input) const {
  return {branch_a_.forward(g, input, masks_.mask_a), branch_b_.forward(g, input, masks_.mask_b)};
}

diff::Var DeExpert::branch_loss(diff::Graph& g, std::span<const double> input, std::span<const double> target,
                                std::size_t valid_length) const {
  const auto [y_a, y_b] = dual_forward(g, input);
  const std::size_t p = config_.backbone.patch_len;
  const auto hidden_a = masks_.mask_a.hidden_samples(p, valid_length);
  const auto hidden_b = masks_.mask_b.hidden_samples(p, valid_length);
  if (hidden_a.empty() && hidden_b.empty()) throw ContractError("de: segment has no valid samples");
  if (hidden_a.empty()) return ore::masked_mse(y_b, target, hidden_b);
  if (hidden_b.empty()) return ore::masked_mse(y_a, target, hidden_a);
  return diff::add(ore::masked_mse(y_a, target, hidden_a), ore::masked_mse(y_b, target, hidden_b));
}

std::vector<double> DeExpert::denoise(std::span<const double> segment, std::size_t valid_length) const {
  const std::size_t limit = std::min(valid_length, segment.size());
  const auto norm = Standardizer::fit(segment.first(limit));
  const auto input = norm.apply(segment);
  diff::Graph g;
  const auto [y_a, y_b] = dual_forward(g, input);
  const auto fused = norm.invert(fuse(y_a.value().data(), y_b.value().data(), masks_));
  std::vector<double> out(segment.begin(), segment.end());
  std::copy_n(fused.begin(), limit, out.begin());
  return out;
}

std::vector<double> DeExpert::denoise(std::span<const double> segment) const {
  return denoise(segment, segment.size());
}

void DeExpert::save(const std::filesystem::path& path) const {
  mae::save_checkpoint(path, params_, config_.to_meta());
}

DeExpert DeExpert::load(const std::filesystem::path& path) {
  auto ckpt = mae::load_checkpoint(path);
  return DeExpert(DeConfig::from_meta(ckpt.meta), std::move(ckpt.params));
}

DeTrainTrace train_de(DeExpert& expert, std::span<const std::vector<double>> noise_dataset, const AugmentConfig& aug,
                      std::size_t epochs) {
  if (noise_dataset.empty()) throw ContractError("train_de: empty dataset");
  aug.validate();
  const DeConfig& cfg = expert.config();
  const std::size_t len = cfg.backbone.segment_length;
  for (const auto& seg : noise_dataset) {
    if (seg.size() != len) {
      throw ContractError("train_de: noise segment has " + std::to_string(seg.size()) + " samples, expected " +
                          std::to_string(len));
    }
  }
  diff::Adam adam(expert.params().all(), cfg.adam);
  adam.set_horizon(epochs * ((noise_dataset.size() + cfg.batch_size - 1) / cfg.batch_size));
  std::mt19937_64 rng(aug.rng_seed);
  std::mt19937_64 order_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> order(noise_dataset.size());
  std::iota(order.begin(), order.end(), 0);
  const auto& b = cfg.backbone;
  DeTrainTrace trace;
  expert.params().zero_grad();
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), order_rng);
    double epoch_sum = 0.0;
    for (std::size_t begin = 0; begin < order.size(); begin += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), begin + cfg.batch_size);
      const double inv = 1.0 / static_cast<double>(end - begin);
      double batch_sum = 0.0;
      for (std::size_t i = begin; i < end; ++i) {
        const auto mixed = augment(noise_dataset[order[i]], cfg.sample_rate, aug, rng);
        const auto norm = Standardizer::fit(mixed.x_mix);
        const auto input = norm.apply(mixed.x_mix);
        const auto target = norm.apply(mixed.x_clean);
        diff::Graph g;
        const diff::Var loss = expert.branch_loss(g, input, target, len);
        batch_sum += loss.value().item();
        g.backward(diff::scale(loss, inv));
      }
      adam.step();
      for (auto* bb : {&expert.branch_a(), &expert.branch_b()}) {
        clamp_param(bb->encoder.sigma, b.sigma_min, b.sigma_max);
        clamp_param(bb->decoder.sigma, b.sigma_min, b.sigma_max);
      }
      trace.step_loss.push_back(batch_sum * inv);
      epoch_sum += batch_sum;
    }
    trace.epoch_loss.push_back(epoch_sum / static_cast<double>(order.size()));
  }
  return trace;
}

DeTrainResult train_de(std::span<const std::vector<double>> noise_dataset, const AugmentConfig& aug,
                       const DeConfig& config, std::size_t epochs) {
  DeExpert expert(config);
  auto trace = train_de(expert, noise_dataset, aug, epochs);
  return DeTrainResult{std::move(expert), std::move(trace)};
}

}  // namespace gyromoe::de
