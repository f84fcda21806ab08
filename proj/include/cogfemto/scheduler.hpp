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

#ifndef COGFEMTO_SCHEDULER_HPP
#define COGFEMTO_SCHEDULER_HPP

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "cogfemto/geometry.hpp"
#include "cogfemto/scenario.hpp"

namespace cogfemto {

enum class ScheduleMode {
  colocated,  // all K users share one outdoor anchor point
  uniform,    // K independent outdoor points
};

std::string_view to_string(ScheduleMode mode);
std::optional<ScheduleMode> parse_schedule_mode(std::string_view text);

struct ScheduleDecision {
  ScheduleMode mode = ScheduleMode::uniform;
  std::vector<Position> macro_positions;     // K outdoor positions
  std::vector<Position> femto_ut_positions;  // one per femtocell, indoor

  std::size_t user_count() const { return macro_positions.size(); }

  /// The same drop restricted to its first `k` scheduled users.
  ScheduleDecision prefix(std::size_t k) const;
};

inline constexpr std::size_t kMaxPlacementAttempts = 1'000'000;

/// Uniform point over the cell, redrawn until outside every femtocell.
/// Throws std::runtime_error after kMaxPlacementAttempts tries.
Position draw_outdoor_position(const Layout& layout, Rng& rng);

/// Uniform point over the disk of femtocell f.
Position draw_femto_ut_position(const Layout& layout, std::size_t f, Rng& rng);

/// Draws the macro users for one slot plus one active femto-UT per femtocell.
/// Requires 1 <= k <= M.
ScheduleDecision draw_schedule(const Scenario& scenario, ScheduleMode mode,
                               std::size_t k, Rng& rng);

}  // namespace cogfemto

#endif  // COGFEMTO_SCHEDULER_HPP
