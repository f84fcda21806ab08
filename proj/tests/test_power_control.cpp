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

#include <cmath>
#include <limits>

#include <doctest.h>

#include "cogfemto/engine.hpp"
#include "cogfemto/power_control.hpp"
#include "oracle.hpp"

using namespace cogfemto;
using doctest::Approx;

namespace {

// Targets achieved by a random positive power vector, so the instance is
// feasible with a known solution.
SinrTargets targets_from(const InterferenceNetwork& net, const DualPowers& q) {
  const std::vector<double> s = net.sinrs(stack_powers(q.macro, q.femto));
  SinrTargets t;
  t.macro.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(net.macro_count()));
  t.femto.assign(s.begin() + static_cast<std::ptrdiff_t>(net.macro_count()), s.end());
  return t;
}

}  // namespace

TEST_SUITE("power_control") {

TEST_CASE("interference temperature limits") {
  const Scenario s = reference_scenario();
  Rng rng = make_stream(71, {});
  const ScheduleDecision d = draw_schedule(s, ScheduleMode::uniform, 3, rng);
  const auto huge = interference_temperature_powers(std::numeric_limits<double>::infinity(), 1000.0,
                                                    d.macro_positions, d.femto_ut_positions, s.layout);
  for (double p : huge) CHECK(p == 1000.0);
  const auto zero = interference_temperature_powers(0.0, 1000.0, d.macro_positions,
                                                    d.femto_ut_positions, s.layout);
  for (double p : zero) CHECK(p == 0.0);

  // A macro user standing on a femto-UT, separated by one wall.
  const Position ut = s.layout.locate(3.0, 4.0);
  REQUIRE(ut.indoor());
  const Position user{3.0, 4.0, std::nullopt};
  const auto one = interference_temperature_powers(1.0, 1000.0, std::vector{user},
                                                   std::vector{ut}, s.layout);
  CHECK(one[0] == Approx(3.1623).epsilon(1e-4));
}

TEST_CASE("interference temperature holds at every scheduled user") {
  const Scenario s = reference_scenario();
  Rng rng = make_stream(72, {});
  const ScheduleDecision d = draw_schedule(s, ScheduleMode::uniform, 5, rng);
  const double kappa = 0.01;
  const auto p = interference_temperature_powers(kappa, 1000.0, d.macro_positions,
                                                 d.femto_ut_positions, s.layout);
  for (std::size_t f = 0; f < p.size(); ++f) {
    double worst = 0.0;
    for (const auto& u : d.macro_positions) {
      const double i = pathloss(u, d.femto_ut_positions[f], s.layout) * p[f];
      CHECK(i <= kappa * (1.0 + 1e-12));
      worst = std::max(worst, i);
    }
    // Either the temperature or the peak is active.
    CHECK((worst == Approx(kappa) || p[f] == 1000.0));
  }
  CHECK_THROWS_AS((void)interference_temperature_powers(-1.0, 1000.0, d.macro_positions,
                                                        d.femto_ut_positions, s.layout),
                  std::invalid_argument);
}

TEST_CASE("YFM step fixed point, zero targets and peaks") {
  const oracle::TinyInstance t = oracle::tiny_instance(73);
  const InterferenceNetwork net = dual_network(t.real, t.bf);
  const DualPowers q{{3.0}, {0.5, 2.0}};
  const SinrTargets at = targets_from(net, q);
  const DualPowers same = yfm_step(q, at, net, std::nullopt);
  CHECK(same.macro[0] == Approx(3.0).epsilon(1e-12));
  CHECK(same.femto[0] == Approx(0.5).epsilon(1e-12));
  CHECK(same.femto[1] == Approx(2.0).epsilon(1e-12));

  SinrTargets off = at;
  off.femto[1] = 0.0;
  CHECK(yfm_step(q, off, net, std::nullopt).femto[1] == 0.0);

  SinrTargets greedy = at;
  greedy.macro[0] *= 100.0;
  const DualPowers clipped = yfm_step(q, greedy, net, PeakLimits{10.0, 1000.0});
  CHECK(clipped.macro[0] == 10.0);
  CHECK(yfm_step(q, greedy, net, std::nullopt).macro[0] == Approx(300.0).epsilon(1e-12));

  // A silent node with a positive target starts from its peak.
  const DualPowers silent{{3.0}, {0.0, 2.0}};
  CHECK(yfm_step(silent, at, net, PeakLimits{10.0, 7.0}).femto[0] == 7.0);
  CHECK(yfm_step(silent, at, net, std::nullopt).femto[0] == 0.0);

  // The channel-level overload builds the same network.
  const DualPowers via_channels = yfm_step(q, greedy, t.bf, t.real, std::nullopt);
  CHECK(via_channels.macro[0] == Approx(300.0).epsilon(1e-12));
}

TEST_CASE("YFM converges to the linear-system solution") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const oracle::TinyInstance t = oracle::tiny_instance(740 + seed);
    const InterferenceNetwork net = dual_network(t.real, t.bf);
    oracle::Gaussian g(seed);
    const DualPowers star{{g.uniform(1.0, 100.0)}, {g.uniform(0.1, 10.0), g.uniform(0.1, 10.0)}};
    const SinrTargets targets = targets_from(net, star);
    std::vector<double> stacked = stack_powers(targets.macro, targets.femto);
    const Eigen::VectorXd want = oracle::fixed_point_powers(net, stacked);

    const DualPowers init{{1.0}, {1.0, 1.0}};
    const auto trace = iterate_power_control(targets, net, init, 200, std::nullopt);
    REQUIRE(trace.size() == 201);
    const DualPowers& got = trace.back().powers;
    CHECK(oracle::rel_err(got.macro[0], want(0)) < 1e-6);
    CHECK(oracle::rel_err(got.femto[0], want(1)) < 1e-6);
    CHECK(oracle::rel_err(got.femto[1], want(2)) < 1e-6);
    CHECK(std::abs(trace.back().macro_sinr[0] - targets.macro[0]) <= 1e-4 * targets.macro[0]);
  }
}

TEST_CASE("trace layout") {
  const oracle::TinyInstance t = oracle::tiny_instance(75);
  const InterferenceNetwork net = dual_network(t.real, t.bf);
  const DualPowers init{{1.0}, {1.0, 1.0}};
  const SinrTargets targets = targets_from(net, DualPowers{{2.0}, {1.0, 1.0}});
  const auto none = iterate_power_control(targets, net, init, 0, std::nullopt);
  REQUIRE(none.size() == 1);
  CHECK(none[0].iteration == 0);
  CHECK(none[0].powers == init);
  const auto five = iterate_power_control(targets, net, init, 5, std::nullopt);
  REQUIRE(five.size() == 6);
  for (std::size_t n = 0; n < 6; ++n) CHECK(five[n].iteration == n);
  CHECK_THROWS_AS((void)iterate_power_control(targets, net, DualPowers{{1.0}, {1.0}}, 1, std::nullopt),
                  DimensionError);
}

TEST_CASE("unconstrained power control preserves the sum power") {
  const Scenario sc = oracle::small_scenario();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const oracle::Drop d = oracle::draw_drop(sc, ScheduleMode::uniform, 4, 760 + seed);
    SlotOptions opts;
    opts.enforce_peaks = false;
    const SlotResult dl = run_dl_slot(sc, d.schedule, d.real, 0.1, opts);
    SinrTargets targets;
    targets.macro = dl.macro_sinr;
    targets.femto = dl.femto_sinr;
    DualPowers init;
    init.macro.assign(4, dl.powers.macro_primal_per_user);
    init.femto = dl.powers.femto_primal;
    const BeamformerSet bf = duality_swap(dl.beams);
    const ConvergenceResult r =
        converge_power_control(targets, dual_network(d.real, bf), init, std::nullopt, 1e-12, 100000);
    REQUIRE(r.converged);
    double primal = sc.macro_power;
    for (double p : dl.powers.femto_primal) primal += p;
    CHECK(oracle::rel_err(r.powers.total(), primal) <= 0.01);
    for (std::size_t k = 0; k < 4; ++k) CHECK(oracle::rel_err(r.macro_sinr[k], dl.macro_sinr[k]) <= 1e-3);
    for (std::size_t f = 0; f < 25; ++f) {
      if (dl.femto_sinr[f] > 0.0) CHECK(oracle::rel_err(r.femto_sinr[f], dl.femto_sinr[f]) <= 1e-3);
    }
  }
}

TEST_CASE("run_power_control uses the standard start and peaks") {
  const Scenario sc = oracle::small_scenario();
  const oracle::Drop d = oracle::draw_drop(sc, ScheduleMode::colocated, 3, 77);
  const SlotResult dl = run_dl_slot(sc, d.schedule, d.real, 1.0);
  SinrTargets targets;
  targets.macro = dl.macro_sinr;
  targets.femto = dl.femto_sinr;
  const PowerAllocation a =
      run_power_control(targets, duality_swap(dl.beams), d.real, sc, dl.powers.femto_primal, 4);
  REQUIRE(a.trace.size() == 5);
  for (double q : a.trace[0].powers.macro) CHECK(q == sc.macro_power / 3.0);
  CHECK(a.trace[0].powers.femto == dl.powers.femto_primal);
  for (const auto& rec : a.trace) {
    for (double q : rec.powers.macro) CHECK(q <= sc.macro_power / 3.0);
    for (double q : rec.powers.femto) CHECK(q <= sc.femto_peak_power);
  }
  const SlotResult ul = run_ul_slot(sc, d.real, dl, 4);
  CHECK(ul.powers.dual == a.dual);
}

}  // TEST_SUITE
