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

#include "gyromoe/mae/backbone.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "gyromoe/diff/ops.hpp"
#include "gyromoe/error.hpp"

namespace gyromoe::mae {

using diff::Graph;
using diff::Param;
using diff::Shape;
using diff::Tensor;
using diff::Var;

std::string to_string(GdPlacement placement) {
  switch (placement) {
    case GdPlacement::None: return "none";
    case GdPlacement::Encoder: return "encoder";
    case GdPlacement::Decoder: return "decoder";
    case GdPlacement::Both: return "both";
  }
  return "none";
}

GdPlacement parse_gd_placement(const std::string& text) {
  if (text == "none") return GdPlacement::None;
  if (text == "encoder") return GdPlacement::Encoder;
  if (text == "decoder") return GdPlacement::Decoder;
  if (text == "both") return GdPlacement::Both;
  throw ConfigError("gd_attn_placement must be one of none|encoder|decoder|both, got '" + text + "'");
}

std::size_t BackboneConfig::mlp_dim() const {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(mlp_ratio * static_cast<double>(embed_dim))));
}

void BackboneConfig::validate() const {
  if (patch_len == 0 || segment_length == 0 || segment_length % patch_len != 0) {
    throw ContractError("backbone: patch_len must divide segment_length");
  }
  if (embed_dim == 0 || heads == 0 || embed_dim % heads != 0) {
    throw ContractError("backbone: embed_dim must be divisible by heads");
  }
  if (!(mlp_ratio > 0.0)) throw ContractError("backbone: mlp_ratio must be positive");
  if (!(sigma_min > 0.0) || sigma_max < sigma_min || sigma_init < sigma_min || sigma_init > sigma_max) {
    throw ContractError("backbone: require 0 < sigma_min <= sigma_init <= sigma_max");
  }
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const std::string& meta_at(const std::map<std::string, std::string>& meta, const std::string& key) {
  const auto it = meta.find(key);
  if (it == meta.end()) throw FormatError("checkpoint metadata lacks '" + key + "'");
  return it->second;
}

}  // namespace

std::map<std::string, std::string> BackboneConfig::to_meta(const std::string& prefix) const {
  return {
      {prefix + "segment_length", std::to_string(segment_length)},
      {prefix + "patch_len", std::to_string(patch_len)},
      {prefix + "embed_dim", std::to_string(embed_dim)},
      {prefix + "enc_layers", std::to_string(enc_layers)},
      {prefix + "dec_layers", std::to_string(dec_layers)},
      {prefix + "heads", std::to_string(heads)},
      {prefix + "mlp_ratio", fmt_double(mlp_ratio)},
      {prefix + "gd_attn_placement", mae::to_string(gd_placement)},
      {prefix + "sigma_init", fmt_double(sigma_init)},
      {prefix + "sigma_min", fmt_double(sigma_min)},
      {prefix + "sigma_max", fmt_double(sigma_max)},
  };
}

BackboneConfig BackboneConfig::from_meta(const std::map<std::string, std::string>& meta, const std::string& prefix) {
  BackboneConfig c;
  c.segment_length = std::stoul(meta_at(meta, prefix + "segment_length"));
  c.patch_len = std::stoul(meta_at(meta, prefix + "patch_len"));
  c.embed_dim = std::stoul(meta_at(meta, prefix + "embed_dim"));
  c.enc_layers = std::stoul(meta_at(meta, prefix + "enc_layers"));
  c.dec_layers = std::stoul(meta_at(meta, prefix + "dec_layers"));
  c.heads = std::stoul(meta_at(meta, prefix + "heads"));
  c.mlp_ratio = std::stod(meta_at(meta, prefix + "mlp_ratio"));
  c.gd_placement = parse_gd_placement(meta_at(meta, prefix + "gd_attn_placement"));
  c.sigma_init = std::stod(meta_at(meta, prefix + "sigma_init"));
  c.sigma_min = std::stod(meta_at(meta, prefix + "sigma_min"));
  c.sigma_max = std::stod(meta_at(meta, prefix + "sigma_max"));
  c.validate();
  return c;
}

// ---- MaskSet ---------------------------------------------------------------

MaskSet::MaskSet(std::size_t num_patches, std::vector<std::size_t> hidden)
    : num_patches_(num_patches), hidden_(std::move(hidden)) {
  std::sort(hidden_.begin(), hidden_.end());
  hidden_.erase(std::unique(hidden_.begin(), hidden_.end()), hidden_.end());
  if (!hidden_.empty() && hidden_.back() >= num_patches_) {
    throw ContractError("mask index " + std::to_string(hidden_.back()) + " outside [0, " +
                        std::to_string(num_patches_) + ")");
  }
}

std::vector<std::size_t> MaskSet::visible() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < num_patches_; ++i)
    if (!is_hidden(i)) out.push_back(i);
  return out;
}

bool MaskSet::is_hidden(std::size_t patch) const {
  return std::binary_search(hidden_.begin(), hidden_.end(), patch);
}

std::vector<std::size_t> MaskSet::hidden_samples(std::size_t patch_len, std::size_t valid_length) const {
  std::vector<std::size_t> out;
  for (std::size_t p : hidden_)
    for (std::size_t k = 0; k < patch_len; ++k) {
      const std::size_t t = p * patch_len + k;
      if (t < valid_length) out.push_back(t);
    }
  return out;
}

// ---- parameters --------------------------------------------------------------

namespace {

Tensor xavier(std::size_t fan_in, std::size_t fan_out, std::mt19937_64& rng) {
  const double a = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::uniform_real_distribution<double> dist(-a, a);
  Tensor t(Shape{fan_in, fan_out});
  for (double& v : t.data()) v = dist(rng);
  return t;
}

Tensor zeros(std::size_t n) { return Tensor(Shape{n}, 0.0); }
Tensor ones(std::size_t n) { return Tensor(Shape{n}, 1.0); }

void init_block(ParamStore& s, const std::string& p, const BackboneConfig& cfg, std::mt19937_64& rng) {
  const std::size_t d = cfg.embed_dim, h = cfg.mlp_dim();
  s.add(p + "ln1.g", ones(d));
  s.add(p + "ln1.b", zeros(d));
  s.add(p + "attn.wq", xavier(d, d, rng));
  s.add(p + "attn.bq", zeros(d));
  s.add(p + "attn.wk", xavier(d, d, rng));
  s.add(p + "attn.bk", zeros(d));
  s.add(p + "attn.wv", xavier(d, d, rng));
  s.add(p + "attn.bv", zeros(d));
  s.add(p + "attn.wo", xavier(d, d, rng));
  s.add(p + "attn.bo", zeros(d));
  s.add(p + "ln2.g", ones(d));
  s.add(p + "ln2.b", zeros(d));
  s.add(p + "mlp.w1", xavier(d, h, rng));
  s.add(p + "mlp.b1", zeros(h));
  s.add(p + "mlp.w2", xavier(h, d, rng));
  s.add(p + "mlp.b2", zeros(d));
}

BlockWeights bind_block(ParamStore& s, const std::string& p) {
  return BlockWeights{&s.at(p + "ln1.g"),   &s.at(p + "ln1.b"),   &s.at(p + "attn.wq"), &s.at(p + "attn.bq"),
                      &s.at(p + "attn.wk"), &s.at(p + "attn.bk"), &s.at(p + "attn.wv"), &s.at(p + "attn.bv"),
                      &s.at(p + "attn.wo"), &s.at(p + "attn.bo"), &s.at(p + "ln2.g"),   &s.at(p + "ln2.b"),
                      &s.at(p + "mlp.w1"),  &s.at(p + "mlp.b1"),  &s.at(p + "mlp.w2"),  &s.at(p + "mlp.b2")};
}

}  // namespace

void init_encoder_params(ParamStore& s, const std::string& prefix, const BackboneConfig& cfg, std::mt19937_64& rng) {
  cfg.validate();
  s.add(prefix + "patch.w", xavier(cfg.patch_len, cfg.embed_dim, rng));
  s.add(prefix + "patch.b", zeros(cfg.embed_dim));
  for (std::size_t l = 0; l < cfg.enc_layers; ++l) init_block(s, prefix + "block" + std::to_string(l) + ".", cfg, rng);
  s.add(prefix + "norm.g", ones(cfg.embed_dim));
  s.add(prefix + "norm.b", zeros(cfg.embed_dim));
  if (cfg.gd_in_encoder()) s.add(prefix + "gd_sigma", Tensor::scalar(cfg.sigma_init));
}

void init_decoder_params(ParamStore& s, const std::string& prefix, const BackboneConfig& cfg, std::mt19937_64& rng) {
  cfg.validate();
  const std::size_t d = cfg.embed_dim;
  s.add(prefix + "embed.w", xavier(d, d, rng));
  s.add(prefix + "embed.b", zeros(d));
  std::normal_distribution<double> small(0.0, 0.02);
  Tensor token(Shape{1, d});
  for (double& v : token.data()) v = small(rng);
  s.add(prefix + "mask_token", std::move(token));
  for (std::size_t l = 0; l < cfg.dec_layers; ++l) init_block(s, prefix + "block" + std::to_string(l) + ".", cfg, rng);
  s.add(prefix + "norm.g", ones(d));
  s.add(prefix + "norm.b", zeros(d));
  s.add(prefix + "head.w", xavier(d, cfg.patch_len, rng));
  s.add(prefix + "head.b", zeros(cfg.patch_len));
  if (cfg.gd_in_decoder()) s.add(prefix + "gd_sigma", Tensor::scalar(cfg.sigma_init));
}

EncoderWeights bind_encoder(ParamStore& s, const std::string& prefix, const BackboneConfig& cfg) {
  EncoderWeights w;
  w.patch_w = &s.at(prefix + "patch.w");
  w.patch_b = &s.at(prefix + "patch.b");
  for (std::size_t l = 0; l < cfg.enc_layers; ++l) w.blocks.push_back(bind_block(s, prefix + "block" + std::to_string(l) + "."));
  w.norm_g = &s.at(prefix + "norm.g");
  w.norm_b = &s.at(prefix + "norm.b");
  if (cfg.gd_in_encoder()) w.sigma = &s.at(prefix + "gd_sigma");
  return w;
}

DecoderWeights bind_decoder(ParamStore& s, const std::string& prefix, const BackboneConfig& cfg) {
  DecoderWeights w;
  w.embed_w = &s.at(prefix + "embed.w");
  w.embed_b = &s.at(prefix + "embed.b");
  w.mask_token = &s.at(prefix + "mask_token");
  for (std::size_t l = 0; l < cfg.dec_layers; ++l) w.blocks.push_back(bind_block(s, prefix + "block" + std::to_string(l) + "."));
  w.norm_g = &s.at(prefix + "norm.g");
  w.norm_b = &s.at(prefix + "norm.b");
  w.head_w = &s.at(prefix + "head.w");
  w.head_b = &s.at(prefix + "head.b");
  if (cfg.gd_in_decoder()) w.sigma = &s.at(prefix + "gd_sigma");
  return w;
}

// ---- pure helpers --------------------------------------------------------------

Tensor patchify(std::span<const double> segment, std::size_t patch_len) {
  if (patch_len == 0 || segment.size() % patch_len != 0) {
    throw ContractError("patchify: patch length " + std::to_string(patch_len) + " does not divide " +
                        std::to_string(segment.size()));
  }
  return Tensor(Shape{segment.size() / patch_len, patch_len}, std::vector<double>(segment.begin(), segment.end()));
}

std::vector<double> unpatchify(const Tensor& patches) {
  return std::vector<double>(patches.data().begin(), patches.data().end());
}

Tensor sinusoidal_encoding(std::size_t num_tokens, std::size_t dim) {
  Tensor pe(Shape{num_tokens, dim});
  for (std::size_t pos = 0; pos < num_tokens; ++pos)
    for (std::size_t i = 0; i < dim; ++i) {
      const double rate = std::pow(10000.0, -static_cast<double>(2 * (i / 2)) / static_cast<double>(dim));
      const double angle = static_cast<double>(pos) * rate;
      pe.at(pos, i) = (i % 2 == 0) ? std::sin(angle) : std::cos(angle);
    }
  return pe;
}

Tensor gd_bias(std::size_t n_tokens, double sigma) {
  if (!(sigma > 0.0)) throw ContractError("gd_bias: sigma must be positive");
  Tensor b(Shape{n_tokens, n_tokens});
  for (std::size_t i = 0; i < n_tokens; ++i)
    for (std::size_t j = 0; j < n_tokens; ++j) {
      const double d = static_cast<double>(i) - static_cast<double>(j);
      b.at(i, j) = -d * d / (2.0 * sigma * sigma);
    }
  return b;
}

// ---- attention -------------------------------------------------------------------

namespace {

Var scores(Var q, Var k, std::optional<Var> bias) {
  const Tensor& qv = q.value();
  const Tensor& kv = k.value();
  if (qv.rank() != 2 || kv.rank() != 2 || qv.cols() != kv.cols()) {
    throw DimensionError("attention: incompatible Q " + diff::to_string(qv.shape()) + " and K " +
                         diff::to_string(kv.shape()));
  }
  Var s = diff::scale(diff::matmul(q, diff::transpose(k)), 1.0 / std::sqrt(static_cast<double>(qv.cols())));
  if (bias) s = diff::add(s, *bias);
  return s;
}

Var attend(Var q, Var k, Var v, std::optional<Var> bias) {
  if (k.value().rows() != v.value().rows()) {
    throw DimensionError("attention: K " + diff::to_string(k.shape()) + " and V " + diff::to_string(v.shape()) +
                         " disagree on token count");
  }
  return diff::matmul(diff::row_softmax(scores(q, k, bias)), v);
}

std::optional<Var> bias_for(std::optional<Var> sigma, std::span<const std::size_t> positions) {
  if (!sigma) return std::nullopt;
  return diff::gaussian_bias(*sigma, positions);
}

Var linear(Graph& g, Var x, Param* w, Param* b) { return diff::add(diff::matmul(x, g.param(*w)), g.param(*b)); }

Var block_forward(Graph& g, const BlockWeights& w, const BackboneConfig& cfg, Var x, std::optional<Var> bias) {
  Var h = diff::layer_norm(x, g.param(*w.ln1_g), g.param(*w.ln1_b));
  Var q = linear(g, h, w.wq, w.bq);
  Var k = linear(g, h, w.wk, w.bk);
  Var v = linear(g, h, w.wv, w.bv);
  const std::size_t dk = cfg.head_dim();
  std::vector<Var> heads;
  heads.reserve(cfg.heads);
  for (std::size_t i = 0; i < cfg.heads; ++i) {
    heads.push_back(attend(diff::slice_cols(q, i * dk, (i + 1) * dk), diff::slice_cols(k, i * dk, (i + 1) * dk),
                           diff::slice_cols(v, i * dk, (i + 1) * dk), bias));
  }
  Var attn = heads.size() == 1 ? heads[0] : diff::concat(heads, 1);
  x = diff::add(x, linear(g, attn, w.wo, w.bo));
  Var h2 = diff::layer_norm(x, g.param(*w.ln2_g), g.param(*w.ln2_b));
  Var m = linear(g, diff::gelu(linear(g, h2, w.w1, w.b1)), w.w2, w.b2);
  return diff::add(x, m);
}

}  // namespace

Var attention_weights(Var q, Var k, std::optional<Var> sigma, std::span<const std::size_t> positions) {
  return diff::row_softmax(scores(q, k, bias_for(sigma, positions)));
}

Var gd_attention(Var q, Var k, Var v, std::optional<Var> sigma, std::span<const std::size_t> positions) {
  if (sigma && positions.size() != q.value().rows()) {
    throw DimensionError("gd_attention: " + std::to_string(positions.size()) + " positions for " +
                         std::to_string(q.value().rows()) + " tokens");
  }
  return attend(q, k, v, bias_for(sigma, positions));
}

// ---- MAE stages ---------------------------------------------------------------------

TokenSequence embed(Graph& g, const EncoderWeights& w, const Tensor& patches) {
  const std::size_t n = patches.rows();
  const std::size_t d = w.patch_w->value.cols();
  Var x = linear(g, g.constant(patches), w.patch_w, w.patch_b);
  x = diff::add(x, g.constant(sinusoidal_encoding(n, d)));
  TokenSequence out{x, {}};
  for (std::size_t i = 0; i < n; ++i) out.positions.push_back(i);
  return out;
}

TokenSequence apply_mask(const TokenSequence& tokens, const MaskSet& mask) {
  std::vector<std::size_t> rows;
  TokenSequence out;
  for (std::size_t r = 0; r < tokens.positions.size(); ++r) {
    if (!mask.is_hidden(tokens.positions[r])) {
      rows.push_back(r);
      out.positions.push_back(tokens.positions[r]);
    }
  }
  if (rows.empty()) throw ContractError("mask hides every token; the encoder needs at least one visible patch");
  out.tokens = rows.size() == tokens.positions.size() ? tokens.tokens : diff::gather(tokens.tokens, rows);
  return out;
}

TokenSequence encode(Graph& g, const EncoderWeights& w, const BackboneConfig& cfg, const TokenSequence& visible) {
  std::optional<Var> bias;
  if (w.sigma != nullptr) bias = diff::gaussian_bias(g.param(*w.sigma), visible.positions);
  Var x = visible.tokens;
  for (const auto& block : w.blocks) x = block_forward(g, block, cfg, x, bias);
  x = diff::layer_norm(x, g.param(*w.norm_g), g.param(*w.norm_b));
  return TokenSequence{x, visible.positions};
}

TokenSequence pad_with_mask_tokens(Graph& g, const DecoderWeights& w, const BackboneConfig& cfg,
                                   const TokenSequence& latent, const MaskSet& mask) {
  const std::size_t n = mask.num_patches();
  if (n != cfg.num_patches()) throw ContractError("mask covers a different number of patches than the backbone");
  Var projected = linear(g, latent.tokens, w.embed_w, w.embed_b);
  Var full = diff::scatter(projected, latent.positions, n);
  if (!mask.empty()) {
    Tensor indicator(Shape{n, 1});
    for (std::size_t p : mask.hidden()) indicator.at(p, 0) = 1.0;
    full = diff::add(full, diff::matmul(g.constant(std::move(indicator)), g.param(*w.mask_token)));
  }
  full = diff::add(full, g.constant(sinusoidal_encoding(n, cfg.embed_dim)));
  TokenSequence out{full, {}};
  for (std::size_t i = 0; i < n; ++i) out.positions.push_back(i);
  return out;
}

Var decode(Graph& g, const DecoderWeights& w, const BackboneConfig& cfg, const TokenSequence& full) {
  std::optional<Var> bias;
  if (w.sigma != nullptr) bias = diff::gaussian_bias(g.param(*w.sigma), full.positions);
  Var x = full.tokens;
  for (const auto& block : w.blocks) x = block_forward(g, block, cfg, x, bias);
  x = diff::layer_norm(x, g.param(*w.norm_g), g.param(*w.norm_b));
  return linear(g, x, w.head_w, w.head_b);
}

Var Backbone::forward(Graph& g, std::span<const double> segment, const MaskSet& mask) const {
  if (segment.size() != config.segment_length) {
    throw ContractError("backbone expects segments of length " + std::to_string(config.segment_length) + ", got " +
                        std::to_string(segment.size()));
  }
  const Tensor patches = patchify(segment, config.patch_len);
  const TokenSequence tokens = embed(g, encoder, patches);
  const TokenSequence visible = apply_mask(tokens, mask);
  const TokenSequence latent = encode(g, encoder, config, visible);
  const TokenSequence full = pad_with_mask_tokens(g, decoder, config, latent, mask);
  const Var out = decode(g, decoder, config, full);
  return diff::reshape(out, Shape{config.segment_length});
}

std::vector<double> Backbone::predict(std::span<const double> segment, const MaskSet& mask) const {
  Graph g;
  const Var out = forward(g, segment, mask);
  return std::vector<double>(out.value().data().begin(), out.value().data().end());
}

}  // namespace gyromoe::mae
