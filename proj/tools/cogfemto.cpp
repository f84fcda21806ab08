// Copyright 2026 The cogfemto Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: sweep, slot and validate subcommands.
//
// Exit codes: 0 success, 1 configuration/validation error, 2 runtime error.

#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cogfemto/config.hpp"
#include "cogfemto/engine.hpp"
#include "cogfemto/output.hpp"

namespace fs = std::filesystem;
using namespace cogfemto;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
};

ConfigFile load(const CommonOptions& opts) {
  ConfigFile cfg = opts.config_path.empty() ? parse_config("", opts.overrides)
                                            : load_config(opts.config_path, opts.overrides);
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.threads) cfg.threads = *opts.threads;
  return cfg;
}

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("-c,--config", opts.config_path,
                  "INI configuration file (defaults to the reference scenario)");
  cmd->add_option("--set", opts.overrides, "Override a field, e.g. --set sweep.n_drops=10");
  cmd->add_option("--seed", opts.seed, "Master seed, overrides the config");
  cmd->add_option("--threads", opts.threads,
                  "Worker threads (0 = auto; COGFEMTO_THREADS also applies)");
}

int cmd_sweep(const CommonOptions& common, const fs::path& out_dir,
              std::optional<std::size_t> drops) {
  ConfigFile cfg = load(common);
  if (drops) cfg.n_drops = *drops;
  const Scenario scenario = make_scenario(cfg);
  const SweepConfig sweep_cfg = make_sweep_config(cfg);

  const auto start = std::chrono::steady_clock::now();
  const auto curves = sweep(scenario, sweep_cfg);
  RunManifest manifest;
  manifest.command = "sweep";
  manifest.config = to_json(cfg);
  manifest.seed = cfg.seed;
  manifest.outputs = write_sweep_outputs(out_dir, curves);
  manifest.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  manifest.outputs.push_back("manifest.json");
  write_text_file(out_dir / "manifest.json", manifest.to_json().dump(2) + "\n");

  for (const auto& name : manifest.outputs) std::cout << (out_dir / name).string() << "\n";
  return 0;
}

int cmd_slot(const CommonOptions& common, std::size_t k, double kappa_db,
             const std::string& mode_text, std::optional<std::size_t> iterations,
             bool with_trace, const std::string& out_dir) {
  const ConfigFile cfg = load(common);
  const Scenario scenario = make_scenario(cfg);
  const auto mode = parse_schedule_mode(mode_text);
  if (!mode) throw ConfigError({fmt::format("--mode: unknown mode '{}'", mode_text)});
  if (k < 1 || k > scenario.macro_antennas) {
    throw ConfigError({fmt::format("--k: K = {} outside [1, M = {}]", k, scenario.macro_antennas)});
  }
  const std::size_t n_iter = iterations.value_or(
      cfg.pc_iterations.empty() ? 6 : cfg.pc_iterations.front());

  SlotOptions options;
  options.mmse_samples = cfg.mmse_samples;
  options.estimation_seed = cfg.seed;
  options.enforce_peaks = cfg.enforce_peaks;

  const auto mode_tag = static_cast<std::uint64_t>(*mode);
  Rng sched_rng = make_stream(cfg.seed, {mode_tag, 0, 0, 0});
  const ScheduleDecision schedule = draw_schedule(scenario, *mode, k, sched_rng);
  Rng fading_rng = make_stream(cfg.seed, {mode_tag, 0, 0, 1});
  const ChannelRealization real = draw_realization(scenario, schedule, fading_rng);

  const SlotResult dl = run_dl_slot(scenario, schedule, real, db_to_linear(kappa_db), options);
  const SlotResult ul = run_ul_slot(scenario, real, dl, n_iter, options);

  const std::string detail = slot_csv(schedule, dl, ul);
  const std::string trace = with_trace ? trace_csv(ul) : std::string();
  if (out_dir.empty()) {
    std::cout << detail;
    if (with_trace) std::cout << "\n" << trace;
  } else {
    fs::create_directories(out_dir);
    write_text_file(fs::path(out_dir) / "slot.csv", detail);
    RunManifest manifest;
    manifest.command = fmt::format("slot --k {} --kappa-db {} --mode {} --iterations {}", k,
                                   format_double(kappa_db), mode_text, n_iter);
    manifest.config = to_json(cfg);
    manifest.seed = cfg.seed;
    manifest.outputs = {"slot.csv"};
    if (with_trace) {
      write_text_file(fs::path(out_dir) / "trace.csv", trace);
      manifest.outputs.push_back("trace.csv");
    }
    manifest.outputs.push_back("manifest.json");
    write_text_file(fs::path(out_dir) / "manifest.json", manifest.to_json().dump(2) + "\n");
  }
  std::cerr << fmt::format("macro-DL sum {:.4f}  femto-UL sum {:.4f}  |  macro-UL sum {:.4f}  "
                           "femto-DL sum {:.4f} bit/s/Hz\n",
                           dl.macro_sum, dl.femto_sum, ul.macro_sum, ul.femto_sum);
  return 0;
}

int cmd_validate(const CommonOptions& common) {
  const ConfigFile cfg = load(common);
  const auto problems = config_violations(cfg);
  if (!problems.empty()) {
    for (const auto& p : problems) std::cerr << "violation: " << p << "\n";
    return kExitValidation;
  }
  const Scenario scenario = make_scenario(cfg);
  const std::size_t order = cfg.layout.femto_grid_order;
  std::cout << fmt::format("femtocells: {} ({} x {})\n", scenario.femto_count(), order, order);
  if (order > 0) {
    std::cout << fmt::format("femtocell spacing: {} m\n",
                             cfg.layout.cell_side / static_cast<double>(order));
  }
  std::cout << fmt::format("macro power P0: {:.4f} dB ({})\n",
                           linear_to_db(scenario.macro_power),
                           cfg.macro_power_db ? "configured" : "calibrated from edge SNR");
  std::cout << fmt::format("femto peak power P1: {:.4f} dB\n",
                           linear_to_db(scenario.femto_peak_power));
  std::cout << fmt::format("kappa grid: {} points, {} to {} dB\n", cfg.kappa_grid_db().size(),
                           cfg.kappa_grid_db().front(), cfg.kappa_grid_db().back());
  std::cout << "configuration OK\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-tier macro/cognitive-femtocell throughput tradeoff simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  CommonOptions sweep_common;
  std::string sweep_out = "results";
  std::optional<std::size_t> sweep_drops;
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep over kappa, K and modes");
  add_common(sweep_cmd, sweep_common);
  sweep_cmd->add_option("-o,--out", sweep_out, "Output directory");
  sweep_cmd->add_option("--drops", sweep_drops, "Drops per grid point, overrides the config");

  CommonOptions slot_common;
  std::size_t slot_k = 6;
  double slot_kappa_db = 0.0;
  std::string slot_mode = "colocated";
  std::optional<std::size_t> slot_iterations;
  bool slot_trace = false;
  std::string slot_out;
  auto* slot_cmd = app.add_subcommand("slot", "Detail dump of a single paired slot");
  add_common(slot_cmd, slot_common);
  slot_cmd->add_option("-k,--k", slot_k, "Scheduled macro users");
  slot_cmd->add_option("--kappa-db", slot_kappa_db, "Interference temperature in dB");
  slot_cmd->add_option("--mode", slot_mode, "colocated or uniform");
  slot_cmd->add_option("--iterations", slot_iterations, "Power-control iterations");
  slot_cmd->add_flag("--trace", slot_trace, "Also emit the power-control trace");
  slot_cmd->add_option("-o,--out", slot_out, "Output directory (stdout when omitted)");

  CommonOptions validate_common;
  auto* validate_cmd = app.add_subcommand("validate", "Check a configuration");
  add_common(validate_cmd, validate_common);

  auto* defaults_cmd = app.add_subcommand("defaults", "Print the default configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*sweep_cmd) return cmd_sweep(sweep_common, sweep_out, sweep_drops);
    if (*slot_cmd) {
      return cmd_slot(slot_common, slot_k, slot_kappa_db, slot_mode, slot_iterations,
                      slot_trace, slot_out);
    }
    if (*validate_cmd) return cmd_validate(validate_common);
    if (*defaults_cmd) {
      std::cout << default_config_text();
      return 0;
    }
  } catch (const ConfigError& e) {
    for (const auto& p : e.problems()) std::cerr << "config error: " << p << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
