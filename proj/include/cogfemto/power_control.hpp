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

#ifndef COGFEMTO_POWER_CONTROL_HPP
#define COGFEMTO_POWER_CONTROL_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cogfemto/geometry.hpp"
#include "cogfemto/sinr.hpp"

namespace cogfemto {

/// Dual-slot SINR targets, copied from the achieved primal SINRs.
struct SinrTargets {
  std::vector<double> macro;  // gamma_k^{mc-UL}
  std::vector<double> femto;  // gamma_f^{fc-DL}
  double kappa = 0.0;         // interference temperature of the primal slot
};

/// Per-node power caps of the dual slot: P0/K per macro user, P1 per femto-BS.
struct PeakLimits {
  double macro = 0.0;
  double femto = 0.0;
};

struct IterationRecord {
  std::size_t iteration = 0;
  DualPowers powers;
  std::vector<double> macro_sinr;
  std::vector<double> femto_sinr;
};

struct PowerAllocation {
  std::vector<double> femto_primal;  // P_f
  double macro_primal_per_user = 0.0;  // P0/K
  DualPowers dual;                   // final Q_{mc,k}, Q_f
  std::vector<IterationRecord> trace;  // initialization first
};

/// Interference-temperature rule for the femto-UT powers:
/// P_f = min(kappa / max_k g(k, f), P1), g between macro user k and the
/// femto-UT of cell f.
std::vector<double> interference_temperature_powers(
    double kappa, double peak_power, std::span<const Position> macro_positions,
    std::span<const Position> femto_positions, const Layout& layout);

/// One synchronous Yates-Foschini-Miljanic update Q <- Q gamma / SINR(Q),
/// followed by clipping to `peaks` when given. A zero target sends the node
/// to zero; a zero SINR with a positive target saturates at the peak (or
/// keeps the power when unconstrained).
DualPowers yfm_step(const DualPowers& current, const SinrTargets& targets,
                    const InterferenceNetwork& dual,
                    const std::optional<PeakLimits>& peaks);

/// Same step with the dual couplings rebuilt from the channels.
DualPowers yfm_step(const DualPowers& current, const SinrTargets& targets,
                    const BeamformerSet& bf_swapped, const ChannelRealization& real,
                    const std::optional<PeakLimits>& peaks);

/// Runs `iterations` updates from `initial`, recording every iterate
/// together with its achieved SINRs.
std::vector<IterationRecord> iterate_power_control(const SinrTargets& targets,
                                                   const InterferenceNetwork& dual,
                                                   const DualPowers& initial,
                                                   std::size_t iterations,
                                                   const std::optional<PeakLimits>& peaks);

/// Power control from the standard initialization Q_{mc,k} = P0/K,
/// Q_f = P_f, with peaks P0/K and P1 enforced.
PowerAllocation run_power_control(const SinrTargets& targets, const BeamformerSet& bf_swapped,
                                  const ChannelRealization& real, const Scenario& scenario,
                                  std::span<const double> femto_primal, std::size_t iterations);

struct ConvergenceResult {
  DualPowers powers;
  std::vector<double> macro_sinr;
  std::vector<double> femto_sinr;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Iterates until the relative change ||Q(n) - Q(n-1)|| / ||Q(n)|| drops
/// below `tolerance` or `max_iterations` is reached.
ConvergenceResult converge_power_control(const SinrTargets& targets,
                                         const InterferenceNetwork& dual,
                                         const DualPowers& initial,
                                         const std::optional<PeakLimits>& peaks,
                                         double tolerance, std::size_t max_iterations);

}  // namespace cogfemto

#endif  // COGFEMTO_POWER_CONTROL_HPP
