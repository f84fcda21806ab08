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

#ifndef COGFEMTO_SCENARIO_HPP
#define COGFEMTO_SCENARIO_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <vector>

#include "cogfemto/geometry.hpp"

namespace cogfemto {

/// Everything about the network that stays fixed across drops. Powers are
/// linear and normalized to a unit noise power.
struct Scenario {
  Layout layout = Layout::build(LayoutParams{});
  std::size_t macro_antennas = 8;  // M
  std::size_t femto_antennas = 5;  // L
  double macro_power = 1.0;        // P0, total over the scheduled users
  double femto_peak_power = 1000.0;  // P1
  std::size_t macro_population = 1000;  // U; documents the population only
  /// When set, femto-femto and macro-UT/femto-UT couplings beyond this
  /// torus distance (m) are dropped. Off by default.
  std::optional<double> interference_cutoff;

  std::size_t femto_count() const { return layout.femto_count(); }

  /// Throws std::invalid_argument naming the first violated field.
  void validate() const;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

using Rng = std::mt19937_64;

/// Independent reproducible substream keyed by the master seed and a path of
/// integers (mode, drop, attempt, ...).
inline Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::vector<std::uint32_t> words;
  words.reserve(2 + 2 * path.size());
  const auto push = [&](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (auto p : path) push(p);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

}  // namespace cogfemto

#endif  // COGFEMTO_SCENARIO_HPP
