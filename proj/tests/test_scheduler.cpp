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
#include <numbers>

#include <doctest.h>

#include "cogfemto/engine.hpp"
#include "cogfemto/scheduler.hpp"
#include "oracle.hpp"

using namespace cogfemto;
using doctest::Approx;

TEST_SUITE("scheduler") {

TEST_CASE("mode names round-trip") {
  CHECK(parse_schedule_mode("colocated") == ScheduleMode::colocated);
  CHECK(parse_schedule_mode("uniform") == ScheduleMode::uniform);
  CHECK(parse_schedule_mode("non-colocated") == ScheduleMode::uniform);
  CHECK_FALSE(parse_schedule_mode("Colocated").has_value());
  CHECK(to_string(ScheduleMode::colocated) == "colocated");
  CHECK(to_string(ScheduleMode::uniform) == "uniform");
}

TEST_CASE("outdoor acceptance fraction equals the outdoor area ratio") {
  const Layout layout = Layout::build(LayoutParams{});
  const double want = 1.0 - 625.0 * std::numbers::pi * 100.0 / 1e6;
  CHECK(want == Approx(0.8037).epsilon(1e-4));

  // Each attempt consumes exactly two engine outputs, so replaying a copy of
  // the engine until it catches up counts the attempts.
  Rng rng = make_stream(31, {});
  const std::size_t draws = 100000;
  std::size_t attempts = 0;
  for (std::size_t i = 0; i < draws; ++i) {
    Rng replay = rng;
    const Position p = draw_outdoor_position(layout, rng);
    REQUIRE_FALSE(p.indoor());
    std::size_t n = 0;
    while (replay != rng) {
      replay.discard(2);
      ++n;
      REQUIRE(n < 1000);
    }
    attempts += n;
  }
  const double fraction = static_cast<double>(draws) / static_cast<double>(attempts);
  const double sigma = std::sqrt(want * (1.0 - want) / static_cast<double>(attempts));
  CHECK(std::abs(fraction - want) < 5.0 * sigma);
}

TEST_CASE("outdoor draws are spread over the whole cell") {
  const Layout layout = Layout::build(LayoutParams{});
  Rng rng = make_stream(32, {});
  const int n = 40000;
  int right = 0;
  int top = 0;
  for (int i = 0; i < n; ++i) {
    const Position p = draw_outdoor_position(layout, rng);
    CHECK(std::abs(p.x) <= 500.0);
    CHECK(std::abs(p.y) <= 500.0);
    right += p.x > 0.0;
    top += p.y > 0.0;
  }
  // The grid is symmetric about both axes, so each half holds half the mass.
  const double sigma = 0.5 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(right / double(n) - 0.5) < 5.0 * sigma);
  CHECK(std::abs(top / double(n) - 0.5) < 5.0 * sigma);
}

TEST_CASE("femto-UT positions are uniform over their disk") {
  const Layout layout = Layout::build(LayoutParams{});
  Rng rng = make_stream(33, {});
  const int n = 40000;
  int inner = 0;
  for (int i = 0; i < n; ++i) {
    const Position p = draw_femto_ut_position(layout, 100, rng);
    REQUIRE(p.indoor_cell == std::optional<std::size_t>(100));
    const double d = torus_distance(p.point(), layout.femto_centers()[100], 1000.0);
    CHECK(d <= 10.0 + 1e-9);
    inner += d <= 5.0;
  }
  // Uniform over the disk: P(r <= R/2) = 1/4.
  const double sigma = std::sqrt(0.25 * 0.75 / n);
  CHECK(std::abs(inner / double(n) - 0.25) < 5.0 * sigma);
}

TEST_CASE("colocated users share one position") {
  const Scenario s = reference_scenario();
  Rng rng = make_stream(34, {});
  const ScheduleDecision d = draw_schedule(s, ScheduleMode::colocated, 6, rng);
  REQUIRE(d.user_count() == 6);
  REQUIRE(d.femto_ut_positions.size() == 625);
  for (const auto& p : d.macro_positions) CHECK(p == d.macro_positions.front());
  for (std::size_t f = 0; f < 625; ++f) {
    const double g0 = pathloss(d.macro_positions[0], d.femto_ut_positions[f], s.layout);
    for (std::size_t k = 1; k < 6; ++k) {
      CHECK(pathloss(d.macro_positions[k], d.femto_ut_positions[f], s.layout) == g0);
    }
  }
}

TEST_CASE("uniform users are distinct and outdoor") {
  const Scenario s = reference_scenario();
  Rng rng = make_stream(35, {});
  const ScheduleDecision d = draw_schedule(s, ScheduleMode::uniform, 8, rng);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK_FALSE(d.macro_positions[i].indoor());
    for (std::size_t j = i + 1; j < 8; ++j) CHECK(d.macro_positions[i] != d.macro_positions[j]);
  }
}

TEST_CASE("with one user both modes draw the same schedule") {
  const Scenario s = reference_scenario();
  Rng a = make_stream(36, {});
  Rng b = make_stream(36, {});
  const ScheduleDecision da = draw_schedule(s, ScheduleMode::colocated, 1, a);
  const ScheduleDecision db = draw_schedule(s, ScheduleMode::uniform, 1, b);
  CHECK(da.macro_positions == db.macro_positions);
  CHECK(da.femto_ut_positions == db.femto_ut_positions);
}

TEST_CASE("schedule preconditions and prefixes") {
  const Scenario s = reference_scenario();
  Rng rng = make_stream(37, {});
  CHECK_THROWS_AS(draw_schedule(s, ScheduleMode::uniform, 0, rng), std::invalid_argument);
  CHECK_THROWS_AS(draw_schedule(s, ScheduleMode::uniform, 9, rng), std::invalid_argument);
  const ScheduleDecision d = draw_schedule(s, ScheduleMode::uniform, 5, rng);
  const ScheduleDecision p = d.prefix(3);
  REQUIRE(p.user_count() == 3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(p.macro_positions[k] == d.macro_positions[k]);
  CHECK(p.femto_ut_positions == d.femto_ut_positions);
  CHECK_THROWS_AS((void)d.prefix(6), std::out_of_range);
}

}  // TEST_SUITE
