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

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "gyromoe/cli/commands.hpp"
#include "gyromoe/error.hpp"

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("gyromoe");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  const char* env = std::getenv("GYROMOE_LOG");
  const std::string level = env ? env : "info";
  if (level == "error") {
    spdlog::set_level(spdlog::level::err);
  } else if (level == "info") {
    spdlog::set_level(spdlog::level::info);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else {
    throw gyromoe::ConfigError("GYROMOE_LOG must be one of error|info|debug, got '" + level + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = gyromoe::cli;
  CLI::App app{"Inertial signal enhancement: over-range reconstruction, denoising and benchmarks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Random seed (overrides the config file)");
  app.add_option("--out", out, "Output path");
  app.add_option("--set", overrides, "Override a config field: section.key=value");

  auto* synth = app.add_subcommand("synth", "Write a synthetic clean/clipped scenario and its truth manifest");

  std::optional<std::string> ore_input;
  auto* train_ore = app.add_subcommand("train-ore", "Train the over-range reconstruction expert");
  train_ore->add_option("--input", ore_input, "Clean wide-range CSV (default: synthetic bursts)");

  std::optional<std::string> de_input;
  auto* train_de = app.add_subcommand("train-de", "Train the denoise expert");
  train_de->add_option("--input", de_input, "Stationary-noise CSV (default: synthetic noise)");

  std::string enhance_input;
  std::optional<std::string> ore_ckpt, de_ckpt;
  auto* enhance = app.add_subcommand("enhance", "Route and enhance a series");
  enhance->add_option("--input", enhance_input, "Input CSV")->required();
  enhance->add_option("--ore", ore_ckpt, "Over-range expert checkpoint");
  enhance->add_option("--de", de_ckpt, "Denoise expert checkpoint");

  std::string raw, enhanced, truth;
  auto* bench = app.add_subcommand("bench", "Compute the metric report and Allan curves");
  bench->add_option("--raw", raw, "Raw (clipped, noisy) CSV")->required();
  bench->add_option("--enhanced", enhanced, "Enhanced CSV")->required();
  bench->add_option("--truth", truth, "Ground-truth CSV")->required();

  std::string allan_input;
  auto* allan = app.add_subcommand("allan", "Allan deviation curve of a series");
  allan->add_option("--input", allan_input, "Input CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    setup_logging();
    const auto config = cli::load_run_config(config_path, overrides, seed);
    const auto out_or = [&](const char* fallback) { return out.empty() ? std::string(fallback) : out; };
    if (synth->parsed()) {
      cli::cmd_synth(config, out_or("synth"));
    } else if (train_ore->parsed()) {
      cli::cmd_train_ore(config, out_or("ore.ckpt"), ore_input);
    } else if (train_de->parsed()) {
      cli::cmd_train_de(config, out_or("de.ckpt"), de_input);
    } else if (enhance->parsed()) {
      if (out.empty()) throw gyromoe::ConfigError("enhance needs --out");
      const auto opt_path = [](const std::optional<std::string>& s) {
        return s ? std::optional<std::filesystem::path>(*s) : std::nullopt;
      };
      cli::cmd_enhance(config, enhance_input, opt_path(ore_ckpt), opt_path(de_ckpt), out);
    } else if (bench->parsed()) {
      cli::cmd_bench(config, raw, enhanced, truth, out_or("report.json"));
    } else if (allan->parsed()) {
      cli::cmd_allan(allan_input, out_or("allan.csv"));
    }
  } catch (const std::exception& e) {
    std::cerr << "gyromoe: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
