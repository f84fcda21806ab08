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

#include "cogfemto/scheduler.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace cogfemto {

std::string_view to_string(ScheduleMode mode) {
  switch (mode) {
    case ScheduleMode::colocated:
      return "colocated";
    case ScheduleMode::uniform:
      return "uniform";
  }
  return "unknown";
}

std::optional<ScheduleMode> parse_schedule_mode(std::string_view text) {
  if (text == "colocated") return ScheduleMode::colocated;
  if (text == "uniform" || text == "non-colocated") return ScheduleMode::uniform;
  return std::nullopt;
}

ScheduleDecision ScheduleDecision::prefix(std::size_t k) const {
  if (k > macro_positions.size()) {
    throw std::out_of_range(fmt::format("prefix({}) of a {}-user schedule", k,
                                        macro_positions.size()));
  }
  ScheduleDecision out;
  out.mode = mode;
  out.macro_positions.assign(macro_positions.begin(),
                             macro_positions.begin() + static_cast<std::ptrdiff_t>(k));
  out.femto_ut_positions = femto_ut_positions;
  return out;
}

Position draw_outdoor_position(const Layout& layout, Rng& rng) {
  std::uniform_real_distribution<double> coord(-0.5 * layout.cell_side(),
                                               0.5 * layout.cell_side());
  for (std::size_t attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
    const double x = coord(rng);
    const double y = coord(rng);
    Position p = layout.locate(x, y);
    if (!p.indoor()) return p;
  }
  throw std::runtime_error("draw_outdoor_position: no outdoor point found");
}

Position draw_femto_ut_position(const Layout& layout, std::size_t f, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Point& c = layout.femto_centers().at(f);
  // sqrt of a uniform radius fraction gives uniform density over the disk;
  // 1 - u keeps the radius strictly inside when u == 0.
  const double r = layout.femto_radius() * std::sqrt(1.0 - unit(rng));
  const double theta = 2.0 * std::numbers::pi * unit(rng);
  Position p = layout.locate(c.x + r * std::cos(theta), c.y + r * std::sin(theta));
  // Rounding on the rim must not turn the femto-UT outdoor.
  p.indoor_cell = f;
  return p;
}

ScheduleDecision draw_schedule(const Scenario& scenario, ScheduleMode mode,
                               std::size_t k, Rng& rng) {
  if (k < 1 || k > scenario.macro_antennas) {
    throw std::invalid_argument(fmt::format(
        "draw_schedule: K = {} outside [1, M = {}]", k, scenario.macro_antennas));
  }
  const Layout& layout = scenario.layout;
  ScheduleDecision out;
  out.mode = mode;
  out.macro_positions.reserve(k);
  if (mode == ScheduleMode::colocated) {
    const Position anchor = draw_outdoor_position(layout, rng);
    out.macro_positions.assign(k, anchor);
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      out.macro_positions.push_back(draw_outdoor_position(layout, rng));
    }
  }
  out.femto_ut_positions.reserve(layout.femto_count());
  for (std::size_t f = 0; f < layout.femto_count(); ++f) {
    out.femto_ut_positions.push_back(draw_femto_ut_position(layout, f, rng));
  }
  return out;
}

}  // namespace cogfemto
