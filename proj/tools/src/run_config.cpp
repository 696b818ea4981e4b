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

#include "gyromoe/cli/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>

#include "gyromoe/error.hpp"
#include "json.hpp"

namespace gyromoe::cli {

using nlohmann::json;

std::size_t ScenarioSettings::motion_samples() const {
  return static_cast<std::size_t>(std::llround(motion_s * sample_rate));
}
std::size_t ScenarioSettings::static_samples() const {
  return static_cast<std::size_t>(std::llround(static_s * sample_rate));
}

std::uint64_t RunConfig::require_seed() const {
  if (!seed) throw ConfigError("field 'seed' is required (set it in the config file or pass --seed)");
  return *seed;
}

namespace {

/// Typed reads from one JSON object; unread keys are rejected by `finish`.
class Section {
 public:
  Section(const json& doc, std::string name) : name_(std::move(name)) {
    if (!doc.contains(name_)) return;
    node_ = &doc.at(name_);
    if (!node_->is_object()) throw ConfigError("field '" + name_ + "' must be an object");
  }

  template <class T>
  bool get(const std::string& key, T& out) {
    seen_.insert(key);
    if (node_ == nullptr || !node_->contains(key)) return false;
    const json& v = node_->at(key);
    try {
      if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw ConfigError("");
        out = v.get<std::string>();
      } else if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) throw ConfigError("");
        out = v.get<T>();
        if (!std::isfinite(out)) throw ConfigError("");
      } else {
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) throw ConfigError("");
        out = v.get<T>();
      }
    } catch (const std::exception&) {
      throw ConfigError("field '" + name_ + "." + key + "' has the wrong type (got " + v.dump() + ")");
    }
    return true;
  }

  void finish() const {
    if (node_ == nullptr) return;
    for (const auto& [key, value] : node_->items()) {
      if (!seen_.count(key)) throw ConfigError("unknown field '" + name_ + "." + key + "'");
    }
  }

 private:
  std::string name_;
  const json* node_ = nullptr;
  std::set<std::string> seen_;
};

template <class Fn>
void guarded(const std::string& field, Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    if (std::string_view(e.what()).starts_with("field '")) throw;
    throw ConfigError("field '" + field + "': " + e.what());
  } catch (const std::exception& e) {
    throw ConfigError("field '" + field + "': " + e.what());
  }
}

void apply_override(json& doc, const std::string& item) {
  const auto eq = item.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + item + "' is not of the form key=value");
  const std::string path = item.substr(0, eq);
  const std::string text = item.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  const auto dot = path.find('.');
  if (dot == std::string::npos) {
    doc[path] = value;
    return;
  }
  const std::string section = path.substr(0, dot);
  if (doc.contains(section) && !doc[section].is_object()) throw ConfigError("field '" + section + "' must be an object");
  doc[section][path.substr(dot + 1)] = value;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text, const std::vector<std::string>& overrides,
                           std::optional<std::uint64_t> seed) {
  json doc = json::object();
  if (!json_text.empty()) {
    try {
      doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
  }
  for (const auto& o : overrides) apply_override(doc, o);

  static const std::set<std::string> sections = {"seed", "synth", "backbone", "ore", "de", "augment", "gate", "metrics"};
  for (const auto& [key, value] : doc.items()) {
    if (!sections.count(key)) throw ConfigError("unknown field '" + key + "'");
  }

  RunConfig cfg;
  if (doc.contains("seed")) {
    const json& s = doc["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      throw ConfigError("field 'seed' must be a non-negative integer");
    }
    cfg.seed = s.get<std::uint64_t>();
  }
  if (seed) cfg.seed = seed;

  Section synth(doc, "synth");
  auto& sc = cfg.synth;
  synth.get("sample_rate", sc.sample_rate);
  synth.get("motion_s", sc.motion_s);
  synth.get("static_s", sc.static_s);
  synth.get("motion_noise_sigma", sc.motion_noise_sigma);
  synth.get("peak_count", sc.peak_count);
  synth.get("peak_min_amplitude", sc.peak_min_amplitude);
  synth.get("peak_max_amplitude", sc.peak_max_amplitude);
  synth.get("peak_min_width_s", sc.peak_min_width_s);
  synth.get("peak_max_width_s", sc.peak_max_width_s);
  synth.get("static_bias", sc.static_bias);
  synth.get("static_white_sigma", sc.static_white_sigma);
  synth.get("static_bias_walk_sigma", sc.static_bias_walk_sigma);
  synth.finish();
  if (!(sc.sample_rate > 0.0)) throw ConfigError("field 'synth.sample_rate' must be positive");
  if (sc.motion_s < 0.0 || sc.static_s < 0.0) throw ConfigError("field 'synth.motion_s'/'synth.static_s' must be >= 0");
  if (sc.peak_min_amplitude > sc.peak_max_amplitude) throw ConfigError("field 'synth.peak_min_amplitude' exceeds max");
  if (sc.peak_min_width_s <= 0.0 || sc.peak_min_width_s > sc.peak_max_width_s) {
    throw ConfigError("field 'synth.peak_min_width_s' must be positive and <= peak_max_width_s");
  }

  mae::BackboneConfig bb;
  Section backbone(doc, "backbone");
  backbone.get("segment_length", bb.segment_length);
  backbone.get("patch_len", bb.patch_len);
  backbone.get("embed_dim", bb.embed_dim);
  backbone.get("enc_layers", bb.enc_layers);
  backbone.get("dec_layers", bb.dec_layers);
  backbone.get("heads", bb.heads);
  backbone.get("mlp_ratio", bb.mlp_ratio);
  backbone.get("sigma_init", bb.sigma_init);
  backbone.get("sigma_min", bb.sigma_min);
  backbone.get("sigma_max", bb.sigma_max);
  backbone.finish();
  guarded("backbone", [&] { bb.validate(); });

  Section ore(doc, "ore");
  auto& om = cfg.ore.model;
  om.backbone = bb;
  om.backbone.patch_len = ore::OreConfig::default_backbone().patch_len;
  om.backbone.embed_dim = ore::OreConfig::default_backbone().embed_dim;
  ore.get("patch_len", om.backbone.patch_len);
  ore.get("embed_dim", om.backbone.embed_dim);
  std::string placement = "decoder";
  ore.get("gd_attn_placement", placement);
  guarded("ore.gd_attn_placement", [&] { om.backbone.gd_placement = mae::parse_gd_placement(placement); });
  ore.get("clip_level", om.clip_level);
  ore.get("lambda_l2", om.weights.l2);
  ore.get("lambda_corr", om.weights.corr);
  ore.get("lambda_pinn", om.weights.pinn);
  ore.get("lambda_sign", om.weights.sign);
  ore.get("kappa", om.weights.kappa);
  ore.get("epochs", cfg.ore.epochs);
  ore.get("batch_size", om.batch_size);
  ore.get("learning_rate", om.adam.learning_rate);
  ore.get("grad_clip", om.adam.clip_norm);
  ore.get("lr_decay_floor", om.adam.decay_floor);
  auto& od = cfg.ore.data;
  ore.get("dataset_size", od.count);
  ore.get("min_ratio", od.min_ratio);
  ore.get("max_ratio", od.max_ratio);
  ore.get("min_width_s", od.min_width_s);
  ore.get("max_width_s", od.max_width_s);
  ore.get("white_noise_sigma", od.white_noise_sigma);
  ore.finish();
  od.segment_length = bb.segment_length;
  od.sample_rate = sc.sample_rate;
  od.rail = om.clip_level;
  guarded("ore", [&] { om.validate(); });

  Section de(doc, "de");
  auto& dm = cfg.de.model;
  dm.backbone = bb;
  de.get("patch_len", dm.backbone.patch_len);
  de.get("embed_dim", dm.backbone.embed_dim);
  placement = "none";
  de.get("gd_attn_placement", placement);
  guarded("de.gd_attn_placement", [&] { dm.backbone.gd_placement = mae::parse_gd_placement(placement); });
  std::string share = de::to_string(dm.weight_share);
  de.get("weight_share", share);
  guarded("de.weight_share", [&] { dm.weight_share = de::parse_weight_share(share); });
  std::string pattern = de::to_string(dm.mask_pattern);
  de.get("mask_pattern", pattern);
  guarded("de.mask_pattern", [&] { dm.mask_pattern = de::parse_mask_pattern(pattern); });
  de.get("mask_ratio", dm.mask_ratio);
  de.get("epochs", cfg.de.epochs);
  de.get("batch_size", dm.batch_size);
  de.get("learning_rate", dm.adam.learning_rate);
  de.get("grad_clip", dm.adam.clip_norm);
  de.get("lr_decay_floor", dm.adam.decay_floor);
  de.get("dataset_size", cfg.de.dataset_size);
  de.get("noise_white_sigma", cfg.de.noise_white_sigma);
  de.get("noise_bias_walk_sigma", cfg.de.noise_bias_walk_sigma);
  de.finish();
  dm.sample_rate = sc.sample_rate;
  guarded("de", [&] { dm.validate(); });
  if (cfg.de.dataset_size == 0) throw ConfigError("field 'de.dataset_size' must be positive");

  Section aug(doc, "augment");
  aug.get("beta", cfg.augment.beta);
  aug.get("corruption_gain", cfg.augment.corruption_gain);
  aug.get("snippet_count", cfg.augment.snippet_count);
  aug.get("snippet_length", cfg.augment.snippet_length);
  aug.finish();
  if (cfg.augment.beta < 0.0) throw ConfigError("field 'augment.beta' must be non-negative");
  if (cfg.augment.corruption_gain < 0.0) throw ConfigError("field 'augment.corruption_gain' must be non-negative");
  if (cfg.augment.snippet_length < 2 || cfg.augment.snippet_length > bb.segment_length) {
    throw ConfigError("field 'augment.snippet_length' must lie in [2, backbone.segment_length]");
  }
  if (cfg.augment.beta > 0.0 && cfg.augment.snippet_count == 0) {
    throw ConfigError("field 'augment.snippet_count' must be positive when beta > 0");
  }

  Section gate(doc, "gate");
  auto& g = cfg.gate;
  g.clip_level = om.clip_level;
  g.segment_length = bb.segment_length;
  gate.get("clip_level", g.clip_level);
  gate.get("clip_eps", g.clip_eps);
  gate.get("peak_run", g.peak_run);
  gate.get("quiet_run", g.quiet_run);
  gate.get("quiet_threshold", g.quiet_threshold);
  gate.get("segment_length", g.segment_length);
  gate.finish();
  guarded("gate", [&] { g.validate(); });
  if (g.segment_length != bb.segment_length) {
    throw ConfigError("field 'gate.segment_length' must equal backbone.segment_length");
  }

  Section metrics(doc, "metrics");
  auto& m = cfg.metrics;
  m.clip_level = om.clip_level;
  m.segment_length = bb.segment_length;
  m.static_region = {sc.motion_samples(), sc.motion_samples() + sc.static_samples()};
  metrics.get("clip_level", m.clip_level);
  metrics.get("segment_length", m.segment_length);
  metrics.get("static_begin", m.static_region.begin);
  metrics.get("static_end", m.static_region.end);
  metrics.finish();
  if (!(m.clip_level > 0.0)) throw ConfigError("field 'metrics.clip_level' must be positive");
  if (m.segment_length == 0) throw ConfigError("field 'metrics.segment_length' must be positive");

  if (cfg.seed) {
    const std::uint64_t s = *cfg.seed;
    om.seed = s;
    od.rng_seed = s + 1;
    dm.seed = s + 2;
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path, const std::vector<std::string>& overrides,
                          std::optional<std::uint64_t> seed) {
  std::string text;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return parse_run_config(text, overrides, seed);
}

de::AugmentConfig make_augment(const RunConfig& config, std::uint64_t seed) {
  de::AugmentConfig aug;
  aug.beta = config.augment.beta;
  aug.corruption_gain = config.augment.corruption_gain;
  aug.rng_seed = seed + 4;
  for (std::size_t i = 0; i < config.augment.snippet_count; ++i) {
    aug.snippet_pool.push_back(
        signal::synth_snippet(config.augment.snippet_length, config.synth.sample_rate, seed + 1000 + i));
  }
  return aug;
}

}  // namespace gyromoe::cli
