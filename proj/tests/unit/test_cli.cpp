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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gyromoe/cli/commands.hpp"
#include "gyromoe/cli/run_config.hpp"
#include "gyromoe/error.hpp"
#include "gyromoe/signal/csv.hpp"

using namespace gyromoe;
using namespace gyromoe::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string config_error(const std::string& json, const std::vector<std::string>& overrides = {}) {
  try {
    parse_run_config(json, overrides, 1);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

/// Small, quick scenario shared by the command tests.
const char* kTinyConfig = R"({
  "synth": {"motion_s": 5.12, "static_s": 10.24, "peak_count": 3},
  "backbone": {"segment_length": 64, "enc_layers": 1, "dec_layers": 1, "embed_dim": 16, "heads": 2},
  "ore": {"epochs": 1, "dataset_size": 16, "embed_dim": 16},
  "de": {"epochs": 1, "dataset_size": 8},
  "augment": {"snippet_count": 4, "snippet_length": 32}
})";

class TempDir {
 public:
  explicit TempDir(const std::string& name) : path_(fs::temp_directory_path() / name) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

}  // namespace

TEST(RunConfigTest, Defaults) {
  const auto cfg = parse_run_config("", {}, 7);
  EXPECT_EQ(cfg.require_seed(), 7u);
  EXPECT_EQ(cfg.ore.model.backbone.patch_len, 4u);
  EXPECT_EQ(cfg.de.model.backbone.patch_len, 16u);
  EXPECT_EQ(cfg.ore.model.backbone.gd_placement, mae::GdPlacement::Decoder);
  EXPECT_EQ(cfg.de.model.backbone.gd_placement, mae::GdPlacement::None);
  EXPECT_EQ(cfg.gate.segment_length, 256u);
  EXPECT_THROW(parse_run_config("", {}, std::nullopt).require_seed(), ConfigError);
}

TEST(RunConfigTest, ErrorsNameTheField) {
  EXPECT_NE(config_error(R"({"ore": {"lamda_corr": 1}})").find("ore.lamda_corr"), std::string::npos);
  EXPECT_NE(config_error(R"({"gate": {"quiet_run": "many"}})").find("gate.quiet_run"), std::string::npos);
  EXPECT_NE(config_error(R"({"de": {"weight_share": "half"}})").find("de.weight_share"), std::string::npos);
  EXPECT_NE(config_error(R"({"bogus": 1})").find("bogus"), std::string::npos);
  EXPECT_NE(config_error("{not json").find("JSON"), std::string::npos);
  EXPECT_NE(config_error(R"({"gate": {"segment_length": 128}})").find("gate.segment_length"), std::string::npos);
}

TEST(RunConfigTest, OverridesWin) {
  const auto cfg = parse_run_config(R"({"ore": {"kappa": 2}})", {"ore.kappa=0.5", "de.mask_pattern=block"}, 1);
  EXPECT_EQ(cfg.ore.model.weights.kappa, 0.5);
  EXPECT_EQ(cfg.de.model.mask_pattern, de::MaskPattern::Block);
  EXPECT_NE(config_error("", {"ore.kappa"}).find("ore.kappa"), std::string::npos);
}

TEST(Commands, SynthIsDeterministic) {
  TempDir dir("gyromoe_cli_synth");
  const auto cfg = parse_run_config(kTinyConfig, {}, 3);
  cmd_synth(cfg, dir.path() / "a");
  cmd_synth(cfg, dir.path() / "b");
  for (const char* f : {"clean.csv", "clipped.csv", "truth.json"})
    EXPECT_EQ(slurp(dir.path() / "a" / f), slurp(dir.path() / "b" / f)) << f;
  const auto clean = signal::load_csv(dir.path() / "a" / "clean.csv");
  EXPECT_EQ(clean.size(), cfg.synth.motion_samples() + cfg.synth.static_samples());
}

TEST(Commands, EnhancePassesThroughQuietFreeSeries) {
  TempDir dir("gyromoe_cli_pass");
  std::vector<double> x(300);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = 100.0 + 50.0 * std::sin(0.1 * static_cast<double>(i));
  signal::save_csv(dir.path() / "in.csv", signal::SampleSeries(x, 100.0));
  const auto cfg = parse_run_config(kTinyConfig, {}, 3);
  cmd_enhance(cfg, dir.path() / "in.csv", std::nullopt, std::nullopt, dir.path() / "out.csv");
  const auto y = signal::load_csv(dir.path() / "out.csv");
  EXPECT_EQ(std::vector<double>(y.values().begin(), y.values().end()), x);
}

TEST(Commands, BenchOfRawAgainstItselfReportsNoChange) {
  TempDir dir("gyromoe_cli_bench");
  const auto cfg = parse_run_config(kTinyConfig, {}, 4);
  cmd_synth(cfg, dir.path());
  cmd_bench(cfg, dir.path() / "clipped.csv", dir.path() / "clipped.csv", dir.path() / "clean.csv",
            dir.path() / "report.json");
  const std::string json = slurp(dir.path() / "report.json");
  EXPECT_NE(json.find("\"p_mse_reduction_pct\": 0.0"), std::string::npos) << json;
  EXPECT_NE(json.find("\"bi_reduction_pct\": 0.0"), std::string::npos) << json;
  EXPECT_TRUE(fs::exists(dir.path() / "report.allan.csv"));
}

TEST(Commands, TrainingWritesCheckpointsAndTraces) {
  TempDir dir("gyromoe_cli_train");
  const auto cfg = parse_run_config(kTinyConfig, {}, 5);
  cmd_train_ore(cfg, dir.path() / "ore.ckpt", std::nullopt);
  cmd_train_de(cfg, dir.path() / "de.ckpt", std::nullopt);
  EXPECT_TRUE(fs::exists(dir.path() / "ore.ckpt"));
  EXPECT_TRUE(fs::exists(dir.path() / "de.ckpt"));
  EXPECT_EQ(slurp(dir.path() / "ore.ckpt.loss.csv").rfind("epoch,loss\n", 0), 0u);
  const auto no_seed = parse_run_config(kTinyConfig, {}, std::nullopt);
  EXPECT_THROW(cmd_train_ore(no_seed, dir.path() / "x.ckpt", std::nullopt), ConfigError);
}

#ifdef GYROMOE_CLI_PATH
TEST(Executable, ReportsOneLineDiagnostics) {
  TempDir dir("gyromoe_cli_exe");
  const fs::path log = dir.path() / "err.txt";
  const std::string bad = std::string(GYROMOE_CLI_PATH) + " --set ore.kappa=-1 --seed 1 synth --out " +
                          (dir.path() / "s").string() + " 2> " + log.string();
  EXPECT_NE(std::system(bad.c_str()), 0);
  const std::string err = slurp(log);
  EXPECT_EQ(err.rfind("gyromoe: ", 0), 0u) << err;
  EXPECT_NE(err.find("kappa"), std::string::npos) << err;

  const std::string ok = std::string(GYROMOE_CLI_PATH) + " --seed 1 --set synth.motion_s=2.56 --set synth.static_s=2.56 synth --out " +
                         (dir.path() / "s").string() + " 2> " + log.string();
  EXPECT_EQ(std::system(ok.c_str()), 0) << slurp(log);
  EXPECT_TRUE(fs::exists(dir.path() / "s" / "clean.csv"));
}
#endif
