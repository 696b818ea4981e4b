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

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gyromoe/diff/graph.hpp"
#include "gyromoe/mae/params.hpp"

namespace gyromoe::mae {

/// Where Gaussian-decay attention replaces plain self-attention.
enum class GdPlacement { None, Encoder, Decoder, Both };

std::string to_string(GdPlacement placement);
GdPlacement parse_gd_placement(const std::string& text);

struct BackboneConfig {
  std::size_t segment_length = 256;
  std::size_t patch_len = 16;
  std::size_t embed_dim = 64;
  std::size_t enc_layers = 4;
  std::size_t dec_layers = 2;
  std::size_t heads = 4;
  double mlp_ratio = 2.0;
  GdPlacement gd_placement = GdPlacement::Decoder;
  double sigma_init = 8.0;  // token-distance units
  double sigma_min = 0.5;
  double sigma_max = 1e6;

  std::size_t num_patches() const { return segment_length / patch_len; }
  std::size_t head_dim() const { return embed_dim / heads; }
  std::size_t mlp_dim() const;
  bool gd_in_encoder() const { return gd_placement == GdPlacement::Encoder || gd_placement == GdPlacement::Both; }
  bool gd_in_decoder() const { return gd_placement == GdPlacement::Decoder || gd_placement == GdPlacement::Both; }
  void validate() const;

  std::map<std::string, std::string> to_meta(const std::string& prefix) const;
  static BackboneConfig from_meta(const std::map<std::string, std::string>& meta, const std::string& prefix);
};

/// Patch indices hidden from the encoder (and supervised by the loss).
class MaskSet {
 public:
  MaskSet() = default;
  MaskSet(std::size_t num_patches, std::vector<std::size_t> hidden);

  std::size_t num_patches() const noexcept { return num_patches_; }
  const std::vector<std::size_t>& hidden() const noexcept { return hidden_; }
  std::vector<std::size_t> visible() const;
  bool is_hidden(std::size_t patch) const;
  bool empty() const noexcept { return hidden_.empty(); }
  bool full() const noexcept { return hidden_.size() == num_patches_; }

  /// Sample indices covered by hidden patches, restricted to [0, valid_length).
  std::vector<std::size_t> hidden_samples(std::size_t patch_len, std::size_t valid_length) const;

 private:
  std::size_t num_patches_ = 0;
  std::vector<std::size_t> hidden_;
};

struct TokenSequence {
  diff::Var tokens;                    // [num_tokens x D]
  std::vector<std::size_t> positions;  // strictly increasing patch indices
};

struct BlockWeights {
  diff::Param *ln1_g, *ln1_b;
  diff::Param *wq, *bq, *wk, *bk, *wv, *bv, *wo, *bo;
  diff::Param *ln2_g, *ln2_b;
  diff::Param *w1, *b1, *w2, *b2;
};

struct EncoderWeights {
  diff::Param *patch_w, *patch_b;
  std::vector<BlockWeights> blocks;
  diff::Param *norm_g, *norm_b;
  diff::Param* sigma = nullptr;  // present iff GD-Attn sits in the encoder
};

struct DecoderWeights {
  diff::Param *embed_w, *embed_b, *mask_token;
  std::vector<BlockWeights> blocks;
  diff::Param *norm_g, *norm_b, *head_w, *head_b;
  diff::Param* sigma = nullptr;  // present iff GD-Attn sits in the decoder
};

void init_encoder_params(ParamStore& store, const std::string& prefix, const BackboneConfig& cfg,
                         std::mt19937_64& rng);
void init_decoder_params(ParamStore& store, const std::string& prefix, const BackboneConfig& cfg,
                         std::mt19937_64& rng);
EncoderWeights bind_encoder(ParamStore& store, const std::string& prefix, const BackboneConfig& cfg);
DecoderWeights bind_decoder(ParamStore& store, const std::string& prefix, const BackboneConfig& cfg);

/// Splits a length-L segment into L/P rows of P samples.
diff::Tensor patchify(std::span<const double> segment, std::size_t patch_len);
std::vector<double> unpatchify(const diff::Tensor& patches);

/// Fixed sinusoidal position table [num_tokens x D].
diff::Tensor sinusoidal_encoding(std::size_t num_tokens, std::size_t dim);

/// Pure value of the Gaussian-decay bias for consecutive token positions.
diff::Tensor gd_bias(std::size_t n_tokens, double sigma);

/// Single-head attention softmax(Q K^T / sqrt(d_k) + B) V. With `sigma`
/// unset the bias is omitted (plain global attention).
diff::Var gd_attention(diff::Var q, diff::Var k, diff::Var v, std::optional<diff::Var> sigma,
                       std::span<const std::size_t> positions);
/// The post-softmax weight matrix of `gd_attention`.
diff::Var attention_weights(diff::Var q, diff::Var k, std::optional<diff::Var> sigma,
                            std::span<const std::size_t> positions);

TokenSequence embed(diff::Graph& g, const EncoderWeights& w, const diff::Tensor& patches);
/// Keeps tokens whose positions are not hidden, order preserved. Raises
/// ContractError when no token would remain.
TokenSequence apply_mask(const TokenSequence& tokens, const MaskSet& mask);
TokenSequence encode(diff::Graph& g, const EncoderWeights& w, const BackboneConfig& cfg, const TokenSequence& visible);
/// Projects latents into decoder width and inserts the learned mask token
/// (plus positional encoding) at every hidden position.
TokenSequence pad_with_mask_tokens(diff::Graph& g, const DecoderWeights& w, const BackboneConfig& cfg,
                                   const TokenSequence& latent, const MaskSet& mask);
/// Returns predicted patches [L/P x P].
diff::Var decode(diff::Graph& g, const DecoderWeights& w, const BackboneConfig& cfg, const TokenSequence& full);

/// Encoder/decoder view over parameters owned elsewhere.
struct Backbone {
  BackboneConfig config;
  EncoderWeights encoder;
  DecoderWeights decoder;

  /// Full MAE pass on a normalized segment; returns a length-L prediction
  /// for every position.
  diff::Var forward(diff::Graph& g, std::span<const double> segment, const MaskSet& mask) const;
  /// Records parameters into `g` and returns the full prediction as plain values.
  std::vector<double> predict(std::span<const double> segment, const MaskSet& mask) const;
};

}  // namespace gyromoe::mae
