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

#include "gyromoe/ore/ore_expert.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "gyromoe/diff/ops.hpp"
#include "gyromoe/error.hpp"
#include "gyromoe/mae/checkpoint.hpp"

namespace gyromoe::ore {

namespace {

const std::string kBackbonePrefix = "backbone.";

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double meta_double(const std::map<std::string, std::string>& meta, const std::string& key) {
  const auto it = meta.find(key);
  if (it == meta.end()) throw FormatError("checkpoint metadata lacks '" + key + "'");
  return std::stod(it->second);
}

mae::Backbone bind(mae::ParamStore& store, const mae::BackboneConfig& cfg) {
  return mae::Backbone{cfg, mae::bind_encoder(store, "enc.", cfg), mae::bind_decoder(store, "dec.", cfg)};
}

mae::ParamStore fresh_params(const OreConfig& cfg) {
  cfg.validate();
  mae::ParamStore store;
  std::mt19937_64 rng(cfg.seed);
  mae::init_encoder_params(store, "enc.", cfg.backbone, rng);
  mae::init_decoder_params(store, "dec.", cfg.backbone, rng);
  return store;
}

void clamp_param(diff::Param* p, double lo, double hi) {
  if (p == nullptr) return;
  for (double& v : p->value.data()) v = std::clamp(v, lo, hi);
}

}  // namespace

mae::BackboneConfig OreConfig::default_backbone() {
  mae::BackboneConfig b;
  b.patch_len = 4;
  b.embed_dim = 32;
  b.gd_placement = mae::GdPlacement::Decoder;
  return b;
}

void OreConfig::validate() const {
  if (!(clip_level > 0.0) || !std::isfinite(clip_level)) throw ContractError("ore: clip level must be positive");
  weights.validate();
  backbone.validate();
  if (batch_size == 0) throw ContractError("ore: batch size must be positive");
  if (!(adam.decay_floor > 0.0 && adam.decay_floor <= 1.0)) throw ContractError("ore: decay floor must lie in (0, 1]");
}

std::map<std::string, std::string> OreConfig::to_meta() const {
  auto meta = backbone.to_meta(kBackbonePrefix);
  meta["model"] = "ore";
  meta["clip_level"] = num(clip_level);
  meta["lambda_l2"] = num(weights.l2);
  meta["lambda_corr"] = num(weights.corr);
  meta["lambda_pinn"] = num(weights.pinn);
  meta["lambda_sign"] = num(weights.sign);
  meta["kappa"] = num(weights.kappa);
  meta["learning_rate"] = num(adam.learning_rate);
  meta["clip_norm"] = num(adam.clip_norm);
  meta["decay_floor"] = num(adam.decay_floor);
  meta["batch_size"] = std::to_string(batch_size);
  meta["seed"] = std::to_string(seed);
  return meta;
}

OreConfig OreConfig::from_meta(const std::map<std::string, std::string>& meta) {
  const auto it = meta.find("model");
  if (it == meta.end() || it->second != "ore") throw FormatError("checkpoint does not hold an over-range expert");
  OreConfig c;
  c.backbone = mae::BackboneConfig::from_meta(meta, kBackbonePrefix);
  c.clip_level = meta_double(meta, "clip_level");
  c.weights.l2 = meta_double(meta, "lambda_l2");
  c.weights.corr = meta_double(meta, "lambda_corr");
  c.weights.pinn = meta_double(meta, "lambda_pinn");
  c.weights.sign = meta_double(meta, "lambda_sign");
  c.weights.kappa = meta_double(meta, "kappa");
  c.adam.learning_rate = meta_double(meta, "learning_rate");
  c.adam.clip_norm = meta_double(meta, "clip_norm");
  c.adam.decay_floor = meta_double(meta, "decay_floor");
  c.batch_size = static_cast<std::size_t>(meta_double(meta, "batch_size"));
  c.seed = std::stoull(meta.at("seed"));
  c.validate();
  return c;
}

OreExpert::OreExpert(OreConfig config) : OreExpert(config, fresh_params(config)) {}

OreExpert::OreExpert(OreConfig config, mae::ParamStore params)
    : config_(std::move(config)), params_(std::move(params)), backbone_(bind(params_, config_.backbone)) {
  config_.validate();
}

void OreExpert::clamp_sigma() {
  const auto& b = config_.backbone;
  clamp_param(backbone_.encoder.sigma, b.sigma_min, b.sigma_max);
  clamp_param(backbone_.decoder.sigma, b.sigma_min, b.sigma_max);
}

std::vector<double> OreExpert::predict(std::span<const double> normalized, const mae::MaskSet& mask) const {
  return backbone_.predict(normalized, mask);
}

std::vector<double> OreExpert::reconstruct(std::span<const double> clipped, std::size_t valid_length) const {
  std::vector<double> out(clipped.begin(), clipped.end());
  const double level = config_.clip_level;
  std::vector<double> x(clipped.size());
  std::transform(clipped.begin(), clipped.end(), x.begin(), [level](double v) { return v / level; });
  const std::size_t limit = std::min(valid_length, clipped.size());
  const auto mask = threshold_mask(x, config_.backbone.patch_len, limit);
  if (mask.empty()) return out;
  const auto pred = predict(x, mask);
  for (std::size_t t = 0; t < limit; ++t)
    if (is_clipped(x[t])) out[t] = pred[t] * level;
  return out;
}

std::vector<double> OreExpert::reconstruct(std::span<const double> clipped) const {
  return reconstruct(clipped, clipped.size());
}

signal::Segment OreExpert::reconstruct(const signal::Segment& clipped) const {
  return signal::Segment{reconstruct(clipped.values, clipped.valid_length), clipped.origin, clipped.valid_length};
}

void OreExpert::save(const std::filesystem::path& path) const {
  mae::save_checkpoint(path, params_, config_.to_meta());
}

OreExpert OreExpert::load(const std::filesystem::path& path) {
  auto ckpt = mae::load_checkpoint(path);
  return OreExpert(OreConfig::from_meta(ckpt.meta), std::move(ckpt.params));
}

bool make_ore_sample(std::span<const double> clean, const OreConfig& config, OreSample& out) {
  const auto& b = config.backbone;
  if (clean.size() != b.segment_length) {
    throw ContractError("ore: training segment has " + std::to_string(clean.size()) + " samples, expected " +
                        std::to_string(b.segment_length));
  }
  const double level = config.clip_level;
  out.target.resize(clean.size());
  out.input.resize(clean.size());
  for (std::size_t t = 0; t < clean.size(); ++t) {
    out.target[t] = clean[t] / level;
    out.input[t] = std::clamp(out.target[t], -1.0, 1.0);
  }
  out.mask = threshold_mask(out.input, b.patch_len);
  if (out.mask.empty() || out.mask.full()) return false;
  out.masked = out.mask.hidden_samples(b.patch_len, clean.size());
  return !pinn_indices(out.masked, clean.size()).empty();
}

TrainTrace train_ore(OreExpert& expert, std::span<const std::vector<double>> dataset, std::size_t epochs) {
  if (dataset.empty()) throw ContractError("train_ore: empty dataset");
  const OreConfig& cfg = expert.config();
  std::vector<OreSample> samples;
  for (const auto& seg : dataset) {
    OreSample s;
    if (make_ore_sample(seg, cfg, s)) samples.push_back(std::move(s));
  }
  if (samples.empty()) throw ContractError("train_ore: no segment reaches the clip rail");

  diff::Adam adam(expert.params().all(), cfg.adam);
  adam.set_horizon(epochs * ((samples.size() + cfg.batch_size - 1) / cfg.batch_size));
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  TrainTrace trace;
  expert.params().zero_grad();
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_sum = 0.0;
    for (std::size_t begin = 0; begin < order.size(); begin += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), begin + cfg.batch_size);
      const double inv = 1.0 / static_cast<double>(end - begin);
      double batch_sum = 0.0;
      for (std::size_t i = begin; i < end; ++i) {
        const OreSample& s = samples[order[i]];
        diff::Graph g;
        const diff::Var pred = expert.backbone().forward(g, s.input, s.mask);
        const diff::Var loss = ore_total_loss(pred, s.target, s.masked, cfg.weights);
        batch_sum += loss.value().item();
        g.backward(diff::scale(loss, inv));
      }
      adam.step();
      expert.clamp_sigma();
      trace.step_loss.push_back(batch_sum * inv);
      epoch_sum += batch_sum;
    }
    trace.epoch_loss.push_back(epoch_sum / static_cast<double>(samples.size()));
  }
  return trace;
}

OreTrainResult train_ore(std::span<const std::vector<double>> dataset, const OreConfig& config, std::size_t epochs) {
  OreExpert expert(config);
  auto trace = train_ore(expert, dataset, epochs);
  return OreTrainResult{std::move(expert), std::move(trace)};
}

}  // namespace gyromoe::ore
