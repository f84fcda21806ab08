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

#include "cogfemto/power_control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace cogfemto {

namespace {

double update_one(double power, double target, double sinr, std::optional<double> peak) {
  if (target == 0.0) return 0.0;
  double next;
  if (sinr > 0.0) {
    next = power * target / sinr;
  } else {
    next = peak ? *peak : power;
  }
  return peak ? std::min(next, *peak) : next;
}

void split_sinrs(const InterferenceNetwork& net, const std::vector<double>& all,
                 std::vector<double>& macro, std::vector<double>& femto) {
  macro.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(net.macro_count()));
  femto.assign(all.begin() + static_cast<std::ptrdiff_t>(net.macro_count()), all.end());
}

IterationRecord make_record(std::size_t n, const DualPowers& q,
                            const InterferenceNetwork& dual) {
  IterationRecord rec;
  rec.iteration = n;
  rec.powers = q;
  split_sinrs(dual, dual.sinrs(stack_powers(q.macro, q.femto)), rec.macro_sinr,
              rec.femto_sinr);
  return rec;
}

void check_shapes(const DualPowers& q, const SinrTargets& t, const InterferenceNetwork& net) {
  if (q.macro.size() != net.macro_count() || q.femto.size() != net.femto_count() ||
      t.macro.size() != net.macro_count() || t.femto.size() != net.femto_count()) {
    throw DimensionError(fmt::format(
        "power control: network has {} macro / {} femto nodes", net.macro_count(),
        net.femto_count()));
  }
}

double relative_change(const DualPowers& prev, const DualPowers& next) {
  double diff = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < next.macro.size(); ++i) {
    diff += std::pow(next.macro[i] - prev.macro[i], 2);
    norm += next.macro[i] * next.macro[i];
  }
  for (std::size_t i = 0; i < next.femto.size(); ++i) {
    diff += std::pow(next.femto[i] - prev.femto[i], 2);
    norm += next.femto[i] * next.femto[i];
  }
  return norm > 0.0 ? std::sqrt(diff / norm) : std::sqrt(diff);
}

}  // namespace

std::vector<double> interference_temperature_powers(
    double kappa, double peak_power, std::span<const Position> macro_positions,
    std::span<const Position> femto_positions, const Layout& layout) {
  if (macro_positions.empty()) {
    throw std::invalid_argument("interference_temperature_powers: no macro users");
  }
  if (kappa < 0.0) throw std::invalid_argument("interference_temperature_powers: kappa < 0");
  std::vector<double> powers;
  powers.reserve(femto_positions.size());
  for (const Position& ut : femto_positions) {
    double worst = 0.0;
    for (const Position& user : macro_positions) {
      worst = std::max(worst, pathloss(user, ut, layout));
    }
    powers.push_back(std::min(kappa / worst, peak_power));
  }
  return powers;
}

DualPowers yfm_step(const DualPowers& current, const SinrTargets& targets,
                    const InterferenceNetwork& dual,
                    const std::optional<PeakLimits>& peaks) {
  check_shapes(current, targets, dual);
  const std::vector<double> sinr = dual.sinrs(stack_powers(current.macro, current.femto));
  const std::optional<double> macro_peak =
      peaks ? std::optional<double>(peaks->macro) : std::nullopt;
  const std::optional<double> femto_peak =
      peaks ? std::optional<double>(peaks->femto) : std::nullopt;

  DualPowers next;
  next.macro.resize(current.macro.size());
  next.femto.resize(current.femto.size());
  for (std::size_t k = 0; k < current.macro.size(); ++k) {
    next.macro[k] = update_one(current.macro[k], targets.macro[k],
                               sinr[dual.macro_node(k)], macro_peak);
  }
  for (std::size_t f = 0; f < current.femto.size(); ++f) {
    next.femto[f] = update_one(current.femto[f], targets.femto[f],
                               sinr[dual.femto_node(f)], femto_peak);
  }
  return next;
}

DualPowers yfm_step(const DualPowers& current, const SinrTargets& targets,
                    const BeamformerSet& bf_swapped, const ChannelRealization& real,
                    const std::optional<PeakLimits>& peaks) {
  return yfm_step(current, targets, dual_network(real, bf_swapped), peaks);
}

std::vector<IterationRecord> iterate_power_control(const SinrTargets& targets,
                                                   const InterferenceNetwork& dual,
                                                   const DualPowers& initial,
                                                   std::size_t iterations,
                                                   const std::optional<PeakLimits>& peaks) {
  check_shapes(initial, targets, dual);
  std::vector<IterationRecord> trace;
  trace.reserve(iterations + 1);
  DualPowers q = initial;
  trace.push_back(make_record(0, q, dual));
  for (std::size_t n = 1; n <= iterations; ++n) {
    q = yfm_step(q, targets, dual, peaks);
    trace.push_back(make_record(n, q, dual));
  }
  return trace;
}

PowerAllocation run_power_control(const SinrTargets& targets, const BeamformerSet& bf_swapped,
                                  const ChannelRealization& real, const Scenario& scenario,
                                  std::span<const double> femto_primal, std::size_t iterations) {
  const std::size_t users = real.user_count();
  PowerAllocation out;
  out.femto_primal.assign(femto_primal.begin(), femto_primal.end());
  out.macro_primal_per_user = scenario.macro_power / static_cast<double>(users);

  DualPowers init;
  init.macro.assign(users, out.macro_primal_per_user);
  init.femto = out.femto_primal;
  const PeakLimits peaks{out.macro_primal_per_user, scenario.femto_peak_power};

  out.trace = iterate_power_control(targets, dual_network(real, bf_swapped), init,
                                    iterations, peaks);
  out.dual = out.trace.back().powers;
  return out;
}

ConvergenceResult converge_power_control(const SinrTargets& targets,
                                         const InterferenceNetwork& dual,
                                         const DualPowers& initial,
                                         const std::optional<PeakLimits>& peaks,
                                         double tolerance, std::size_t max_iterations) {
  check_shapes(initial, targets, dual);
  ConvergenceResult out;
  DualPowers q = initial;
  for (std::size_t n = 1; n <= max_iterations; ++n) {
    DualPowers next = yfm_step(q, targets, dual, peaks);
    const double change = relative_change(q, next);
    q = std::move(next);
    out.iterations = n;
    if (change < tolerance) {
      out.converged = true;
      break;
    }
  }
  split_sinrs(dual, dual.sinrs(stack_powers(q.macro, q.femto)), out.macro_sinr,
              out.femto_sinr);
  out.powers = std::move(q);
  return out;
}

}  // namespace cogfemto
