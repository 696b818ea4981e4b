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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <spdlog/spdlog.h>

#include "common/routing_oracle.hpp"
#include "common/allan_oracle.hpp"
#include "common/primitive_cases.hpp"
#include "gyromoe/bench/allan.hpp"
#include "gyromoe/bench/baselines.hpp"
#include "gyromoe/bench/metrics.hpp"
#include "gyromoe/cli/commands.hpp"
#include "gyromoe/cli/run_config.hpp"
#include "gyromoe/de/de_expert.hpp"
#include "gyromoe/diff/grad_check.hpp"
#include "gyromoe/gate/gate.hpp"
#include "gyromoe/mae/backbone.hpp"
#include "gyromoe/ore/losses.hpp"
#include "gyromoe/ore/ore_expert.hpp"
#include "gyromoe/signal/synth.hpp"

using namespace gyromoe;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

// Denoiser training budget for the desk-scale run.
constexpr std::size_t kDeTrainSegments = 4096;
constexpr std::size_t kDeEpochs = 8;
constexpr double kDeBeta = 20.0;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

std::vector<double> gaussian(std::size_t n, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, sigma);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

std::vector<std::size_t> iota(std::size_t b, std::size_t e) {
  std::vector<std::size_t> v(e - b);
  std::iota(v.begin(), v.end(), b);
  return v;
}

std::vector<std::vector<double>> windows(std::span<const double> x, std::size_t len) {
  std::vector<std::vector<double>> out;
  for (std::size_t b = 0; b + len <= x.size(); b += len) out.emplace_back(x.begin() + b, x.begin() + b + len);
  return out;
}

Outcome gradients() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::size_t failures = 0, checks = 0;
  const auto note = [&](const diff::GradCheckReport& r) {
    worst = std::max(worst, r.max_rel_error);
    failures += (r.passed && r.max_rel_error <= 1e-4) ? 0 : 1;
    ++checks;
  };
  for (const auto& c : test_support::primitive_cases())
    for (std::uint64_t seed = 0; seed < 10; ++seed) note(c.run(seed));

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> start(0, 40);
    const auto x = gaussian(64, 0.5, 100 + seed);
    const auto xh = gaussian(64, 0.5, 200 + seed);
    const std::size_t b = start(rng);
    const auto m = iota(b, b + 20);
    note(diff::grad_check(
        [&](diff::Graph&, std::span<const diff::Var> in) { return ore::ore_total_loss(in[0], x, m, ore::LossWeights{}); },
        {diff::Tensor::vector(xh)}));
  }

  de::DeConfig cfg;
  cfg.backbone.segment_length = 64;
  cfg.backbone.patch_len = 8;
  cfg.backbone.embed_dim = 16;
  cfg.backbone.enc_layers = 1;
  cfg.backbone.dec_layers = 1;
  cfg.backbone.heads = 2;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    cfg.seed = seed;
    de::DeExpert expert(cfg);
    const auto input = gaussian(64, 1.0, 300 + seed);
    const auto target = gaussian(64, 1.0, 400 + seed);
    diff::GradCheckOptions opts;
    opts.max_entries_per_param = 3;
    opts.sample_seed = seed;
    auto params = expert.params().all();
    note(diff::grad_check([&](diff::Graph& g) { return expert.branch_loss(g, input, target, 64); }, params, opts));
  }
  const double secs = seconds_since(t0);
  return {failures == 0 && secs < 120.0,
          fmt("%zu checks, %zu failed, max rel err %.2e, %.1f s", checks, failures, worst, secs)};
}

Outcome gd_limit() {
  std::mt19937_64 rng(42);
  std::vector<std::size_t> pos(16);
  std::iota(pos.begin(), pos.end(), 0);
  double worst = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    diff::Graph g;
    const auto q = g.constant(test_support::random_tensor(diff::Shape{16, 8}, rng, -2, 2));
    const auto k = g.constant(test_support::random_tensor(diff::Shape{16, 8}, rng, -2, 2));
    const auto v = g.constant(test_support::random_tensor(diff::Shape{16, 8}, rng, -2, 2));
    const auto a = mae::gd_attention(q, k, v, g.constant(diff::Tensor::scalar(1e6)), pos).value();
    const auto b = mae::gd_attention(q, k, v, std::nullopt, pos).value();
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return {worst <= 1e-9, fmt("max abs diff %.2e over 20 draws", worst)};
}

double golden_min(const std::function<double(double)>& f, double a, double b) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  while (b - a > 1e-12) {
    if (f(c) < f(d)) b = d; else a = c;
    c = b - r * (b - a);
    d = a + r * (b - a);
  }
  return 0.5 * (a + b);
}

Outcome pinn_closed_form() {
  const std::vector<double> flat(64, 0.3);
  const double loss = ore::pinn_loss(flat, iota(0, 64), 1.0);
  double dev = std::abs(loss - 2.0 * std::log(2.0));
  bool ok = dev <= 1e-9;
  std::string d = fmt("constant loss err %.1e;", dev);
  for (double kappa : {0.5, 1.0, 2.0}) {
    const double e = golden_min([&](double v) { return ore::energy_barrier(v, kappa); }, 1e-9, 1.0 - 1e-9);
    const double err = std::abs(e - 1.0 / (1.0 + kappa));
    ok = ok && err <= 1e-6;
    d += fmt(" kappa %.1f argmin err %.1e", kappa, err);
  }
  return {ok, d};
}

Outcome allan() {
  const auto t0 = Clock::now();
  const auto x = gaussian(std::size_t{1} << 17, 0.1, 2024);
  std::vector<std::size_t> sizes = iota(1, 257);
  const auto curve = bench::allan_deviation(x, 100.0, sizes);
  double worst_rel = 0.0, worst_oracle = 0.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double want = 0.1 / std::sqrt(static_cast<double>(sizes[i]));
    worst_rel = std::max(worst_rel, std::abs(curve.deviations[i] - want) / want);
    worst_oracle = std::max(worst_oracle, std::abs(curve.deviations[i] - test_support::allan_oracle(x, sizes[i])));
  }
  const double secs = seconds_since(t0);
  return {worst_rel <= 0.10 && worst_oracle <= 1e-12 && secs < 30.0,
          fmt("max rel dev from 0.1/sqrt(m) %.3f, oracle diff %.1e, %.1f s", worst_rel, worst_oracle, secs)};
}

Outcome published_numbers() {
  const double bi = bench::percent_reduction(10.03, 0.157);
  const double ratio = 59017.0 / 181456.0;
  return {std::abs(bi + 98.4) <= 0.05 && std::abs(ratio - 0.325) <= 0.001,
          fmt("BI change %.2f%%, P_MSE ratio %.4f", bi, ratio)};
}

Outcome desk_ore() {
  const auto t0 = Clock::now();
  signal::PeakDatasetConfig dc;
  dc.rng_seed = 11;
  const auto train = signal::make_peak_segments(dc);
  dc.count = 200;
  dc.rng_seed = 99;
  const auto held_out = signal::make_peak_segments(dc);

  ore::OreConfig cfg;
  cfg.seed = 3;
  const auto result = ore::train_ore(train, cfg, 20);
  const double train_secs = seconds_since(t0);

  const signal::ClipSpec clip(cfg.clip_level);
  std::vector<std::vector<double>> truth, raw, rec;
  double se_raw = 0.0, se_rec = 0.0;
  std::size_t above = 0;
  for (const auto& s : held_out) {
    const auto idx = bench::over_range_indices(s, clip);
    if (idx.empty()) continue;
    const auto c = signal::clip(s, clip);
    const auto r = result.expert.reconstruct(c);
    se_raw += bench::p_mse(s, c, idx);
    se_rec += bench::p_mse(s, r, idx);
    double apex = 0.0;
    for (auto i : idx) apex = std::max(apex, std::abs(r[i]));
    above += apex > clip.level ? 1 : 0;
    truth.push_back(s);
    raw.push_back(c);
    rec.push_back(r);
  }
  const double ratio = se_rec / se_raw;
  const double psnr_raw = bench::psnr(truth, raw, clip);
  const double psnr_rec = bench::psnr(truth, rec, clip);
  const double apex_frac = static_cast<double>(above) / static_cast<double>(truth.size());
  return {ratio <= 0.5 && psnr_rec - psnr_raw >= 3.0 && apex_frac >= 0.9 && train_secs <= 1800.0,
          fmt("P_MSE ratio %.3f, PSNR %.2f -> %.2f dB, apex above rail %.1f%% of %zu peaks, training %.0f s", ratio,
              psnr_raw, psnr_rec, 100.0 * apex_frac, truth.size(), train_secs)};
}

/// Signal region is the injected snippet; everything else is noise.
double region_snr(std::span<const double> y, std::size_t offset, std::size_t length) {
  std::vector<double> sig(y.begin() + offset, y.begin() + offset + length), rest;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (i < offset || i >= offset + length) rest.push_back(y[i]);
  return bench::snr(sig, rest);
}

Outcome desk_de() {
  const auto t0 = Clock::now();
  signal::StaticNoiseConfig st;
  st.white_sigma = 0.1;
  st.bias_walk_sigma = 0.01;
  st.length = 256 * kDeTrainSegments;
  st.rng_seed = 3;
  const auto train = windows(signal::synth_static(st).values(), 256);

  de::AugmentConfig aug;
  aug.beta = kDeBeta;
  aug.rng_seed = 4;
  for (std::uint64_t i = 0; i < 64; ++i) aug.snippet_pool.push_back(signal::synth_snippet(128, 100.0, 1000 + i));

  de::DeConfig cfg;
  cfg.seed = 2;
  const auto result = de::train_de(train, aug, cfg, kDeEpochs);
  const double train_secs = seconds_since(t0);

  st.length = 256 * 100;
  st.rng_seed = 77;
  std::mt19937_64 rng(55);
  double snr_in = 0.0, snr_out = 0.0;
  std::size_t n = 0;
  for (const auto& noise : windows(signal::synth_static(st).values(), 256)) {
    const auto m = de::augment(noise, 100.0, aug, rng);
    const auto y = result.expert.denoise(m.x_mix);
    snr_in += region_snr(m.x_mix, m.offset, 128);
    snr_out += region_snr(y, m.offset, 128);
    ++n;
  }
  snr_in /= static_cast<double>(n);
  snr_out /= static_cast<double>(n);

  st.length = 8192;
  st.bias = 0.2;
  st.rng_seed = 88;
  const auto quiet = signal::synth_static(st);
  std::vector<double> denoised;
  for (const auto& w : windows(quiet.values(), 256)) {
    const auto y = result.expert.denoise(w);
    denoised.insert(denoised.end(), y.begin(), y.end());
  }
  const auto bi_raw = bench::bias_instability(bench::allan_deviation(quiet.values(), 100.0));
  const auto bi_den = bench::bias_instability(bench::allan_deviation(denoised, 100.0));
  const double change = bi_raw && bi_den ? bench::percent_reduction(*bi_raw, *bi_den) : 0.0;
  return {snr_out >= snr_in + 5.0 && change <= -80.0,
          fmt("SNR %.2f -> %.2f dB (need +5), BI %.2f -> %.2f deg/h (%.1f%%, need -80%%), training %.0f s", snr_in,
              snr_out, bi_raw.value_or(0.0), bi_den.value_or(0.0), change, train_secs)};
}

Outcome gate_equivalence() {
  ore::OreConfig oc;
  oc.backbone.segment_length = 64;
  oc.backbone.embed_dim = 16;
  oc.backbone.enc_layers = 1;
  oc.backbone.dec_layers = 1;
  oc.backbone.heads = 2;
  oc.seed = 8;
  de::DeConfig dc;
  dc.backbone = oc.backbone;
  dc.backbone.patch_len = 8;
  dc.seed = 9;
  const ore::OreExpert peak(oc);
  const de::DeExpert denoise(dc);
  const auto experts = gate::make_experts(&peak, &denoise);

  gate::GateConfig cfg;
  cfg.segment_length = 64;
  cfg.quiet_run = 8;
  std::mt19937_64 rng(17);
  const test_support::SegmentKind kinds[] = {test_support::SegmentKind::PeakOnly, test_support::SegmentKind::NoiseOnly,
                                             test_support::SegmentKind::Both, test_support::SegmentKind::PassThrough};
  std::vector<double> series, expected;
  std::size_t mismatched = 0, routed_wrong = 0, pass_changed = 0, kind_count[4] = {};
  for (int i = 0; i < 100; ++i) {
    const auto kind = kinds[i % 4];
    const auto x = test_support::random_gate_segment(kind, cfg, rng);
    const auto d = gate::route(x, cfg);
    const bool want_peak = kind == test_support::SegmentKind::PeakOnly || kind == test_support::SegmentKind::Both;
    const bool want_noise = kind == test_support::SegmentKind::NoiseOnly || kind == test_support::SegmentKind::Both;
    routed_wrong += (d.peak != want_peak || d.noise != want_noise) ? 1 : 0;
    ++kind_count[i % 4];
    const auto want = test_support::routing_oracle(x, cfg, experts);
    if (gate::enhance_segment(x, x.size(), cfg, experts) != want) ++mismatched;
    if (kind == test_support::SegmentKind::PassThrough && want != x) ++pass_changed;
    series.insert(series.end(), x.begin(), x.end());
    expected.insert(expected.end(), want.begin(), want.end());
  }
  const auto out = gate::enhance(signal::SampleSeries(series, 100.0), cfg, experts);
  const bool batched = std::equal(out.values().begin(), out.values().end(), expected.begin(), expected.end());
  return {mismatched == 0 && routed_wrong == 0 && pass_changed == 0 && batched,
          fmt("%zu/100 segment mismatches, batched series %s, %zu misrouted, %zu pass-through changed", mismatched,
              batched ? "identical" : "differs", routed_wrong, pass_changed)};
}

Outcome mask_algebra() {
  std::size_t bad = 0;
  for (std::size_t n = 2; n <= 64; ++n) {
    const auto pair = de::cross_masks(n);
    for (std::size_t i = 0; i < n; ++i) {
      const bool a = pair.mask_a.is_hidden(i), b = pair.mask_b.is_hidden(i);
      if (a == b || a != (i % 2 == 1)) ++bad;
    }
  }
  de::DeConfig cfg;
  mae::ParamStore one;
  std::mt19937_64 rng(0);
  mae::init_encoder_params(one, "enc.", cfg.backbone, rng);
  mae::init_decoder_params(one, "dec.", cfg.backbone, rng);
  const std::size_t backbone = one.scalar_count();
  cfg.weight_share = de::WeightShare::Both;
  const std::size_t both = de::DeExpert(cfg).params().scalar_count();
  cfg.weight_share = de::WeightShare::None;
  const std::size_t none = de::DeExpert(cfg).params().scalar_count();
  return {bad == 0 && both == backbone && none > backbone,
          fmt("%zu complementarity violations over 2..64 patches; params backbone %zu, shared %zu, unshared %zu", bad,
              backbone, both, none)};
}

Outcome baselines() {
  const auto w = bench::savgol_weights(2, 2, 2);
  const double want[] = {-3.0, 12.0, 17.0, 12.0, -3.0};
  double werr = 0.0;
  for (std::size_t i = 0; i < 5; ++i) werr = std::max(werr, std::abs(w[i] - want[i] / 35.0));

  std::vector<double> truth(61);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double t = static_cast<double>(i) - 30.0;
    truth[i] = 900.0 - 0.9 * t * t;
  }
  const signal::ClipSpec clip(450.0);
  const auto fit = bench::poly_extrapolate_peaks(signal::clip(truth, clip), clip, 2, 5);
  const double apex_err = std::abs(fit.values[30] - 900.0);

  const auto a = gaussian(200, 1.0, 5), b = gaussian(200, 1.0, 6);
  std::vector<double> aff(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) aff[i] = 3.5 * b[i] - 7.0;
  const double corr_err = std::abs(bench::pearson_corr(a, aff) - bench::pearson_corr(a, b));
  return {werr <= 1e-9 && apex_err <= 1e-6 && corr_err <= 1e-12,
          fmt("savgol weight err %.1e, apex err %.1e, affine corr err %.1e", werr, apex_err, corr_err)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void pipeline(const fs::path& dir) {
  const auto cfg = cli::parse_run_config(R"({
    "synth": {"motion_s": 10.24, "static_s": 20.48, "peak_count": 4},
    "ore": {"epochs": 2, "dataset_size": 64},
    "de": {"epochs": 2, "dataset_size": 32},
    "augment": {"snippet_count": 8}
  })",
                                         {}, 31);
  cli::cmd_synth(cfg, dir);
  cli::cmd_train_ore(cfg, dir / "ore.ckpt", std::nullopt);
  cli::cmd_train_de(cfg, dir / "de.ckpt", std::nullopt);
  cli::cmd_enhance(cfg, dir / "clipped.csv", dir / "ore.ckpt", dir / "de.ckpt", dir / "enhanced.csv");
  cli::cmd_bench(cfg, dir / "clipped.csv", dir / "enhanced.csv", dir / "clean.csv", dir / "report.json");
}

Outcome reproducibility() {
  const fs::path root = fs::temp_directory_path() / "gyromoe_acceptance_repro";
  fs::remove_all(root);
  pipeline(root / "a");
  pipeline(root / "b");
  std::size_t files = 0, differing = 0;
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    ++files;
    const auto other = root / "b" / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) ++differing;
  }
  fs::remove_all(root);
  return {files >= 8 && differing == 0, fmt("%zu artifacts compared, %zu differ", files, differing)};
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::warn);
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"gradient correctness", gradients},
      {"GD attention wide-sigma limit", gd_limit},
      {"PINN closed form", pinn_closed_form},
      {"Allan oracle", allan},
      {"published-number arithmetic", published_numbers},
      {"desk-scale over-range expert", desk_ore},
      {"desk-scale denoise expert", desk_de},
      {"gate equivalence", gate_equivalence},
      {"mask algebra", mask_algebra},
      {"baseline sanity", baselines},
      {"reproducibility", reproducibility},
  };
  int failed = 0, id = 0;
  for (const auto& [name, run] : criteria) {
    ++id;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s C%d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
