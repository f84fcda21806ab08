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

#ifndef COGFEMTO_ENGINE_HPP
#define COGFEMTO_ENGINE_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "cogfemto/beamforming.hpp"
#include "cogfemto/channel.hpp"
#include "cogfemto/power_control.hpp"
#include "cogfemto/scenario.hpp"
#include "cogfemto/scheduler.hpp"
#include "cogfemto/sinr.hpp"

namespace cogfemto {

enum class SlotDirection {
  macro_dl_femto_ul,
  macro_ul_femto_dl,
};

std::string_view to_string(SlotDirection direction);

struct SlotOptions {
  /// 0 computes u_f from the exact covariance. A positive count instead
  /// estimates the received covariance from that many simulated vectors.
  std::size_t mmse_samples = 0;
  std::uint64_t estimation_seed = 0;
  /// Clip dual powers at P0/K and P1 during power control.
  bool enforce_peaks = true;
};

/// Per-node outcome of one slot.
struct SlotResult {
  SlotDirection direction = SlotDirection::macro_dl_femto_ul;
  double kappa = 0.0;
  std::vector<double> macro_sinr;
  std::vector<double> femto_sinr;
  std::vector<double> macro_rates;  // bit/s/Hz
  std::vector<double> femto_rates;
  double macro_sum = 0.0;
  double femto_sum = 0.0;
  PowerAllocation powers;
  BeamformerSet beams;
};

/// Macro-DL/femto-UL slot: interference-temperature femto powers, LZFB
/// precoders, MMSE receivers, then rates. Throws RankDeficientError on a
/// degenerate macro channel.
SlotResult run_dl_slot(const Scenario& scenario, const ScheduleDecision& schedule,
                       const ChannelRealization& real, double kappa,
                       const SlotOptions& options = {});

/// Macro-UL/femto-DL slot on the same realization: swaps the primal
/// beamformers, targets the primal SINRs and runs `iterations` power-control
/// steps. Rates come from the SINRs achieved at the last iterate.
SlotResult run_ul_slot(const Scenario& scenario, const ChannelRealization& real,
                       const SlotResult& primal, std::size_t iterations,
                       const SlotOptions& options = {});

/// Transmit power P0 giving `target_edge_snr_db` without interference at the
/// cell-edge midpoint, torus distance L/2 from the macro-BS.
double calibrate_p0(const Layout& layout, double target_edge_snr_db);

/// Reference scenario: L = 1000 m, 25 x 25 femtocells of radius 10 m,
/// delta = 50 m, alpha = 3.5, 5 dB walls, M = 8, L = 5, edge SNR 10 dB,
/// P1 = 30 dB.
Scenario reference_scenario();

struct SweepConfig {
  std::vector<double> kappa_grid;  // linear, noise-normalized
  std::vector<std::size_t> k_values;
  std::vector<ScheduleMode> modes;
  std::size_t n_drops = 1000;
  std::vector<std::size_t> pc_iterations{6};
  std::uint64_t seed = 1;
  std::size_t threads = 0;  // 0: hardware concurrency
  SlotOptions slot;

  /// Throws std::invalid_argument naming the offending field.
  void validate(const Scenario& scenario) const;
};

/// `points` log-spaced values from `min_db` to `max_db`, returned linear.
std::vector<double> log_spaced_kappa(double min_db, double max_db, std::size_t points);

struct TradeoffPoint {
  std::size_t k = 0;
  double kappa = 0.0;
  double macro_mean = 0.0;
  double macro_stderr = 0.0;
  double femto_mean = 0.0;
  double femto_stderr = 0.0;
  std::size_t n_drops = 0;
};

struct TradeoffCurve {
  ScheduleMode mode = ScheduleMode::uniform;
  SlotDirection direction = SlotDirection::macro_dl_femto_ul;
  std::size_t k = 0;              // 0 for a boundary mixing several K
  std::size_t pc_iterations = 0;  // 0 for the macro-DL/femto-UL slot
  std::vector<TradeoffPoint> points;
};

/// Monte Carlo sweep over modes, K and kappa. Every drop provides one
/// realization that is shared across K (by prefix) and kappa, and each
/// macro-UL/femto-DL result reuses its own macro-DL/femto-UL slot.
/// Deterministic given the seed, independent of the thread count.
std::vector<TradeoffCurve> sweep(const Scenario& scenario, const SweepConfig& config);

/// Non-dominated points over all given curves (which should share mode,
/// direction and iteration count), sorted by increasing macro throughput.
TradeoffCurve pareto_boundary(const std::vector<TradeoffCurve>& curves);

/// Number of worker threads to use for `requested` (0 = automatic). The
/// COGFEMTO_THREADS environment variable overrides the automatic choice.
std::size_t resolve_thread_count(std::size_t requested);

}  // namespace cogfemto

#endif  // COGFEMTO_ENGINE_HPP
