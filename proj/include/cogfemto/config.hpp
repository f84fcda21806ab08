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

#ifndef COGFEMTO_CONFIG_HPP
#define COGFEMTO_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cogfemto/engine.hpp"
#include "cogfemto/geometry.hpp"
#include "cogfemto/scenario.hpp"

namespace cogfemto {

/// Parse or validation failure. Carries one message per offending field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Contents of a run configuration file. Distances in meters, powers in dB
/// relative to the noise power. Defaults reproduce the reference scenario.
struct ConfigFile {
  // [geometry]
  LayoutParams layout;
  double interference_cutoff_m = 0.0;  // 0 disables the cutoff

  // [radio]
  std::size_t macro_antennas = 8;
  std::size_t femto_antennas = 5;
  double edge_snr_db = 10.0;
  std::optional<double> macro_power_db;  // overrides the edge-SNR calibration
  double femto_peak_power_db = 30.0;
  std::size_t macro_population = 1000;

  // [sweep]
  double kappa_db_min = -30.0;
  double kappa_db_max = 30.0;
  std::size_t kappa_points = 30;
  std::vector<double> kappa_db;  // explicit grid; overrides min/max/points
  std::vector<std::size_t> k_values{1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<ScheduleMode> modes{ScheduleMode::colocated, ScheduleMode::uniform};
  std::size_t n_drops = 1000;
  std::vector<std::size_t> pc_iterations{6};
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  std::size_t mmse_samples = 0;
  bool enforce_peaks = true;

  /// The kappa grid in dB, explicit or generated.
  std::vector<double> kappa_grid_db() const;
};

/// Parses INI text. `overrides` are "section.key=value" strings applied on
/// top of the file. Throws ConfigError listing every malformed or unknown
/// field.
ConfigFile parse_config(std::string_view text, const std::vector<std::string>& overrides = {});

/// Reads and parses a file; a missing file is a ConfigError naming the path.
ConfigFile load_config(const std::filesystem::path& path,
                       const std::vector<std::string>& overrides = {});

/// Semantic checks (disk overlap, K <= M, finite powers, ...). Empty when
/// the configuration is usable.
std::vector<std::string> config_violations(const ConfigFile& cfg);

/// Builds the scenario. Throws ConfigError when config_violations is
/// non-empty.
Scenario make_scenario(const ConfigFile& cfg);
SweepConfig make_sweep_config(const ConfigFile& cfg);

/// Every field, for the run manifest.
nlohmann::json to_json(const ConfigFile& cfg);

/// The default configuration rendered as an INI document.
std::string default_config_text();

}  // namespace cogfemto

#endif  // COGFEMTO_CONFIG_HPP
