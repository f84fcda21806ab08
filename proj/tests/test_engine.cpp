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
#include <cstdlib>

#include <doctest.h>

#include "cogfemto/engine.hpp"
#include "oracle.hpp"

using namespace cogfemto;
using doctest::Approx;

namespace {

SweepConfig small_sweep() {
  SweepConfig c;
  c.kappa_grid = log_spaced_kappa(-20.0, 20.0, 3);
  c.k_values = {1, 4};
  c.modes = {ScheduleMode::colocated, ScheduleMode::uniform};
  c.n_drops = 3;
  c.pc_iterations = {2, 6};
  c.seed = 5;
  c.threads = 1;
  return c;
}

void check_same(const std::vector<TradeoffCurve>& a, const std::vector<TradeoffCurve>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].points.size() == b[i].points.size());
    CHECK(a[i].k == b[i].k);
    CHECK(a[i].pc_iterations == b[i].pc_iterations);
    for (std::size_t j = 0; j < a[i].points.size(); ++j) {
      CHECK(a[i].points[j].macro_mean == b[i].points[j].macro_mean);
      CHECK(a[i].points[j].femto_mean == b[i].points[j].femto_mean);
      CHECK(a[i].points[j].macro_stderr == b[i].points[j].macro_stderr);
      CHECK(a[i].points[j].femto_stderr == b[i].points[j].femto_stderr);
    }
  }
}

TradeoffPoint pt(double macro, double femto) {
  TradeoffPoint p;
  p.macro_mean = macro;
  p.femto_mean = femto;
  return p;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("edge-SNR calibration") {
  const Layout ref = Layout::build(LayoutParams{});
  const double p0 = calibrate_p0(ref, 10.0);
  CHECK(p0 == Approx(10.0 * (1.0 + std::pow(10.0, 3.5))).epsilon(1e-12));
  CHECK(p0 == Approx(3.163e4).epsilon(1e-3));
  CHECK(linear_to_db(p0) == Approx(45.0).epsilon(1e-3));

  LayoutParams flat;
  flat.pathloss_3db_distance = 1e12;
  CHECK(calibrate_p0(Layout::build(flat), 0.0) == Approx(1.0));

  LayoutParams wider;
  wider.pathloss_3db_distance = 100.0;
  CHECK(calibrate_p0(Layout::build(wider), 10.0) < p0);

  const Scenario s = reference_scenario();
  CHECK(s.macro_power == p0);
  CHECK(s.femto_peak_power == Approx(1000.0));
  CHECK(s.femto_count() == 625);
}

TEST_CASE("zero interference temperature silences the femtocells") {
  const Scenario sc = oracle::small_scenario();
  const oracle::Drop d = oracle::draw_drop(sc, ScheduleMode::uniform, 4, 81);
  const SlotResult dl = run_dl_slot(sc, d.schedule, d.real, 0.0);
  CHECK(dl.femto_sum == 0.0);
  for (double p : dl.powers.femto_primal) CHECK(p == 0.0);
  for (std::size_t k = 0; k < 4; ++k) {
    const double clean = d.real.macro_user_gain[k] *
                         std::norm(dot(d.real.macro_user[k], dl.beams.macro[k])) *
                         sc.macro_power / 4.0;
    CHECK(dl.macro_sinr[k] == Approx(clean).epsilon(1e-12));
  }

  const SlotResult ul = run_ul_slot(sc, d.real, dl, 6);
  CHECK(ul.femto_sum == 0.0);
  for (double q : ul.powers.dual.femto) CHECK(q == 0.0);
  // Single-tier uplink: the targets are met from the first step on.
  for (std::size_t k = 0; k < 4; ++k) CHECK(ul.macro_sinr[k] == Approx(dl.macro_sinr[k]).epsilon(1e-9));
}

TEST_CASE("without femtocells the slot is a plain ZF downlink") {
  Scenario sc = reference_scenario();
  LayoutParams none;
  none.femto_grid_order = 0;
  sc.layout = Layout::build(none);
  const oracle::Drop d = oracle::draw_drop(sc, ScheduleMode::uniform, 8, 82);
  const SlotResult dl = run_dl_slot(sc, d.schedule, d.real, 1.0);
  CHECK(dl.femto_sinr.empty());
  REQUIRE(dl.macro_sinr.size() == 8);
  for (std::size_t k = 0; k < 8; ++k) {
    const double clean = d.real.macro_user_gain[k] *
                         std::norm(dot(d.real.macro_user[k], dl.beams.macro[k])) *
                         sc.macro_power / 8.0;
    CHECK(dl.macro_sinr[k] == Approx(clean).epsilon(1e-12));
  }
  const SlotResult ul = run_ul_slot(sc, d.real, dl, 3);
  CHECK(ul.macro_sum == Approx(dl.macro_sum).epsilon(1e-9));
}

TEST_CASE("full-scale slot pair at mid kappa") {
  const Scenario sc = reference_scenario();
  const oracle::Drop d = oracle::draw_drop(sc, ScheduleMode::colocated, 6, 83);
  const SlotResult dl = run_dl_slot(sc, d.schedule, d.real, 1.0);
  CHECK(dl.macro_sum > 0.0);
  CHECK(dl.femto_sum > 0.0);
  CHECK(std::isfinite(dl.macro_sum));
  CHECK(std::isfinite(dl.femto_sum));
  CHECK(dl.macro_rates.size() == 6);
  CHECK(dl.femto_rates.size() == 625);
  const SlotResult ul = run_ul_slot(sc, d.real, dl, 6);
  CHECK(ul.direction == SlotDirection::macro_ul_femto_dl);
  CHECK(ul.powers.trace.size() == 7);
  CHECK(ul.macro_sum > 0.0);
  CHECK(ul.femto_sum > 0.0);
  CHECK_THROWS_AS((void)run_ul_slot(sc, d.real, ul, 6), std::invalid_argument);
}

TEST_CASE("MMSE from sampled covariances approaches the exact receiver") {
  const Scenario sc = oracle::small_scenario();
  const oracle::Drop d = oracle::draw_drop(sc, ScheduleMode::uniform, 3, 84);
  const SlotResult exact = run_dl_slot(sc, d.schedule, d.real, 0.5);
  SlotOptions opts;
  opts.mmse_samples = 50000;
  opts.estimation_seed = 9;
  const SlotResult sampled = run_dl_slot(sc, d.schedule, d.real, 0.5, opts);
  CHECK(sampled.femto_sum <= exact.femto_sum * (1.0 + 1e-9));
  CHECK(sampled.femto_sum >= 0.98 * exact.femto_sum);
  CHECK(sampled.macro_sum == Approx(exact.macro_sum));
}

TEST_CASE("sweeps are deterministic and thread-count independent") {
  const Scenario sc = oracle::small_scenario();
  SweepConfig c = small_sweep();
  const auto a = sweep(sc, c);
  const auto b = sweep(sc, c);
  c.threads = 3;
  const auto threaded = sweep(sc, c);
  check_same(a, b);
  check_same(a, threaded);

  // 2 modes x (DL + 2 iteration counts) x 2 K values.
  REQUIRE(a.size() == 12);
  for (const auto& curve : a) {
    CHECK(curve.points.size() == 3);
    for (const auto& p : curve.points) CHECK(p.n_drops == 3);
  }
  CHECK(a[0].mode == ScheduleMode::colocated);
  CHECK(a[0].direction == SlotDirection::macro_dl_femto_ul);
  CHECK(a[2].pc_iterations == 2);
  CHECK(a[4].pc_iterations == 6);

  c.seed = 6;
  const auto other = sweep(sc, c);
  CHECK(other[0].points[0].macro_mean != a[0].points[0].macro_mean);
}

TEST_CASE("kappa zero gives zero femto throughput for every K") {
  const Scenario sc = oracle::small_scenario();
  SweepConfig c = small_sweep();
  c.kappa_grid = {0.0};
  c.k_values = {1, 2, 3};
  for (const auto& curve : sweep(sc, c)) {
    CHECK(curve.points[0].femto_mean == 0.0);
    CHECK(curve.points[0].macro_mean > 0.0);
  }
}

TEST_CASE("sweep preconditions") {
  const Scenario sc = oracle::small_scenario();
  SweepConfig c = small_sweep();
  c.kappa_grid.clear();
  CHECK_THROWS_AS(sweep(sc, c), std::invalid_argument);
  c = small_sweep();
  c.k_values = {9};
  CHECK_THROWS_AS(sweep(sc, c), std::invalid_argument);
  c = small_sweep();
  c.n_drops = 0;
  CHECK_THROWS_AS(sweep(sc, c), std::invalid_argument);
  c = small_sweep();
  c.kappa_grid = {-1.0};
  CHECK_THROWS_AS(sweep(sc, c), std::invalid_argument);
}

TEST_CASE("log-spaced kappa grid") {
  const auto g = log_spaced_kappa(-30.0, 30.0, 30);
  REQUIRE(g.size() == 30);
  CHECK(g.front() == Approx(1e-3));
  CHECK(g.back() == Approx(1e3));
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] / g[i - 1] == Approx(std::pow(10.0, 6.0 / 29.0)));
  CHECK(log_spaced_kappa(0.0, 10.0, 1) == std::vector<double>{1.0});
  CHECK(log_spaced_kappa(0.0, 10.0, 0).empty());
}

TEST_CASE("Pareto boundary") {
  TradeoffCurve a;
  a.k = 1;
  a.points = {pt(1.0, 10.0), pt(2.0, 8.0), pt(1.5, 7.0), pt(3.0, 1.0)};
  const TradeoffCurve self = pareto_boundary({a});
  REQUIRE(self.points.size() == 3);
  CHECK(self.k == 1);
  CHECK(self.points[0].macro_mean == 1.0);
  CHECK(self.points[1].macro_mean == 2.0);
  CHECK(self.points[2].macro_mean == 3.0);

  TradeoffCurve b;
  b.k = 2;
  for (const auto& p : a.points) b.points.push_back(pt(p.macro_mean + 1.0, p.femto_mean + 1.0));
  const TradeoffCurve both = pareto_boundary({a, b});
  CHECK(both.k == 0);
  const TradeoffCurve only_b = pareto_boundary({b});
  REQUIRE(both.points.size() == only_b.points.size());
  for (std::size_t i = 0; i < both.points.size(); ++i) {
    CHECK(both.points[i].macro_mean == only_b.points[i].macro_mean);
    CHECK(both.points[i].femto_mean == only_b.points[i].femto_mean);
  }
  CHECK(pareto_boundary({}).points.empty());
}

TEST_CASE("thread count resolution") {
  CHECK(resolve_thread_count(3) == 3);
  ::setenv("COGFEMTO_THREADS", "2", 1);
  CHECK(resolve_thread_count(0) == 2);
  ::setenv("COGFEMTO_THREADS", "junk", 1);
  CHECK(resolve_thread_count(0) >= 1);
  ::unsetenv("COGFEMTO_THREADS");
  CHECK(resolve_thread_count(0) >= 1);
}

}  // TEST_SUITE
