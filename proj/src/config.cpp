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

#include "cogfemto/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

namespace cogfemto {

namespace {

namespace pt = boost::property_tree;

std::string join_problems(const std::vector<std::string>& problems) {
  return fmt::format("{}", fmt::join(problems, "; "));
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    boost::algorithm::trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::optional<double> parse_double(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') return std::nullopt;
  return v;
}

template <typename Int>
std::optional<Int> parse_int(const std::string& text) {
  Int v{};
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), last, v);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return v;
}

std::optional<bool> parse_bool(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  return std::nullopt;
}

// Binds each known "section.key" to a setter that reports malformed input.
class FieldTable {
 public:
  using Setter = std::function<bool(const std::string&)>;

  void add(const std::string& key, Setter setter) { setters_.emplace(key, std::move(setter)); }

  void apply(const pt::ptree& tree, std::vector<std::string>& problems) const {
    for (const auto& [section, body] : tree) {
      if (body.empty()) {
        if (!body.data().empty()) {
          problems.push_back(fmt::format("{}: key outside of a section", section));
        }
        continue;
      }
      for (const auto& [key, value] : body) {
        const std::string name = section + "." + key;
        const auto it = setters_.find(name);
        if (it == setters_.end()) {
          problems.push_back(fmt::format("{}: unknown key", name));
          continue;
        }
        std::string text = value.data();
        boost::algorithm::trim(text);
        if (!it->second(text)) {
          problems.push_back(fmt::format("{}: cannot parse '{}'", name, text));
        }
      }
    }
  }

 private:
  std::map<std::string, Setter> setters_;
};

FieldTable make_fields(ConfigFile& c) {
  FieldTable t;
  const auto real = [](double& dst) {
    return [&dst](const std::string& s) {
      const auto v = parse_double(s);
      if (v) dst = *v;
      return v.has_value();
    };
  };
  const auto count = [](std::size_t& dst) {
    return [&dst](const std::string& s) {
      const auto v = parse_int<std::size_t>(s);
      if (v) dst = *v;
      return v.has_value();
    };
  };
  const auto counts = [](std::vector<std::size_t>& dst) {
    return [&dst](const std::string& s) {
      std::vector<std::size_t> out;
      for (const auto& item : split_list(s)) {
        const auto v = parse_int<std::size_t>(item);
        if (!v) return false;
        out.push_back(*v);
      }
      dst = std::move(out);
      return true;
    };
  };

  t.add("geometry.cell_side_m", real(c.layout.cell_side));
  t.add("geometry.femto_grid_order", count(c.layout.femto_grid_order));
  t.add("geometry.femto_radius_m", real(c.layout.femto_radius));
  t.add("geometry.pathloss_3db_distance_m", real(c.layout.pathloss_3db_distance));
  t.add("geometry.pathloss_exponent", real(c.layout.pathloss_exponent));
  t.add("geometry.wall_loss_db", real(c.layout.wall_loss_db));
  t.add("geometry.interference_cutoff_m", real(c.interference_cutoff_m));

  t.add("radio.macro_antennas", count(c.macro_antennas));
  t.add("radio.femto_antennas", count(c.femto_antennas));
  t.add("radio.edge_snr_db", real(c.edge_snr_db));
  t.add("radio.macro_power_db", [&c](const std::string& s) {
    if (s.empty() || s == "auto") {
      c.macro_power_db.reset();
      return true;
    }
    const auto v = parse_double(s);
    if (v) c.macro_power_db = *v;
    return v.has_value();
  });
  t.add("radio.femto_peak_power_db", real(c.femto_peak_power_db));
  t.add("radio.macro_population", count(c.macro_population));

  t.add("sweep.kappa_db_min", real(c.kappa_db_min));
  t.add("sweep.kappa_db_max", real(c.kappa_db_max));
  t.add("sweep.kappa_points", count(c.kappa_points));
  t.add("sweep.kappa_db", [&c](const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) {
      const auto v = parse_double(item);
      if (!v) return false;
      out.push_back(*v);
    }
    c.kappa_db = std::move(out);
    return true;
  });
  t.add("sweep.k_values", counts(c.k_values));
  t.add("sweep.modes", [&c](const std::string& s) {
    std::vector<ScheduleMode> out;
    for (const auto& item : split_list(s)) {
      const auto m = parse_schedule_mode(item);
      if (!m) return false;
      out.push_back(*m);
    }
    c.modes = std::move(out);
    return true;
  });
  t.add("sweep.n_drops", count(c.n_drops));
  t.add("sweep.pc_iterations", counts(c.pc_iterations));
  t.add("sweep.seed", [&c](const std::string& s) {
    const auto v = parse_int<std::uint64_t>(s);
    if (v) c.seed = *v;
    return v.has_value();
  });
  t.add("sweep.threads", count(c.threads));
  t.add("sweep.mmse_samples", count(c.mmse_samples));
  t.add("sweep.enforce_peaks", [&c](const std::string& s) {
    const auto v = parse_bool(s);
    if (v) c.enforce_peaks = *v;
    return v.has_value();
  });
  return t;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems)) {}

std::vector<double> ConfigFile::kappa_grid_db() const {
  if (!kappa_db.empty()) return kappa_db;
  std::vector<double> out;
  if (kappa_points == 0) return out;
  if (kappa_points == 1) return {kappa_db_min};
  for (std::size_t i = 0; i < kappa_points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(kappa_points - 1);
    out.push_back(kappa_db_min + t * (kappa_db_max - kappa_db_min));
  }
  return out;
}

ConfigFile parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError({fmt::format("line {}: {}", e.line(), e.message())});
  }

  std::vector<std::string> problems;
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || item.find('.') > eq) {
      problems.push_back(fmt::format("override '{}': expected section.key=value", item));
      continue;
    }
    tree.put(item.substr(0, eq), item.substr(eq + 1));
  }

  ConfigFile cfg;
  make_fields(cfg).apply(tree, problems);
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

ConfigFile load_config(const std::filesystem::path& path,
                       const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError({fmt::format("cannot open config file '{}'", path.string())});
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), overrides);
}

std::vector<std::string> config_violations(const ConfigFile& c) {
  std::vector<std::string> v;
  const auto& g = c.layout;
  if (!(g.cell_side > 0.0)) v.push_back("geometry.cell_side_m: must be positive");
  if (!(g.femto_radius > 0.0)) v.push_back("geometry.femto_radius_m: must be positive");
  if (!(g.pathloss_3db_distance > 0.0)) {
    v.push_back("geometry.pathloss_3db_distance_m: must be positive");
  }
  if (!(g.pathloss_exponent > 0.0)) v.push_back("geometry.pathloss_exponent: must be positive");
  if (!(g.wall_loss_db >= 0.0)) v.push_back("geometry.wall_loss_db: must be non-negative");
  if (g.femto_grid_order > 0 && g.cell_side > 0.0 &&
      !(2.0 * g.femto_radius < g.cell_side / static_cast<double>(g.femto_grid_order))) {
    v.push_back(fmt::format(
        "geometry: femtocell disks overlap (2 x {} m radius >= {} m grid spacing)",
        g.femto_radius, g.cell_side / static_cast<double>(g.femto_grid_order)));
  }
  if (!(c.interference_cutoff_m >= 0.0)) {
    v.push_back("geometry.interference_cutoff_m: must be >= 0 (0 disables)");
  }

  if (c.macro_antennas < 1) v.push_back("radio.macro_antennas: must be >= 1");
  if (c.femto_antennas < 1) v.push_back("radio.femto_antennas: must be >= 1");
  if (!std::isfinite(c.edge_snr_db)) v.push_back("radio.edge_snr_db: must be finite");
  if (c.macro_power_db && !std::isfinite(*c.macro_power_db)) {
    v.push_back("radio.macro_power_db: must be finite");
  }
  if (!std::isfinite(c.femto_peak_power_db)) {
    v.push_back("radio.femto_peak_power_db: must be finite");
  }
  if (c.macro_population < 1) v.push_back("radio.macro_population: must be >= 1");

  const auto grid = c.kappa_grid_db();
  if (grid.empty()) v.push_back("sweep.kappa_db: grid is empty");
  for (double k : grid) {
    if (std::isnan(k) || k == std::numeric_limits<double>::infinity()) {
      v.push_back(fmt::format("sweep.kappa_db: invalid value {}", k));
    }
  }
  if (c.k_values.empty()) v.push_back("sweep.k_values: empty");
  for (std::size_t k : c.k_values) {
    if (k < 1 || k > c.macro_antennas) {
      v.push_back(fmt::format("sweep.k_values: K = {} outside [1, M = {}]", k, c.macro_antennas));
    }
  }
  if (c.modes.empty()) v.push_back("sweep.modes: empty");
  if (c.n_drops < 1) v.push_back("sweep.n_drops: must be >= 1");
  return v;
}

Scenario make_scenario(const ConfigFile& c) {
  auto problems = config_violations(c);
  if (!problems.empty()) throw ConfigError(std::move(problems));
  Scenario s;
  s.layout = Layout::build(c.layout);
  s.macro_antennas = c.macro_antennas;
  s.femto_antennas = c.femto_antennas;
  s.macro_power = c.macro_power_db ? db_to_linear(*c.macro_power_db)
                                   : calibrate_p0(s.layout, c.edge_snr_db);
  s.femto_peak_power = db_to_linear(c.femto_peak_power_db);
  s.macro_population = c.macro_population;
  if (c.interference_cutoff_m > 0.0) s.interference_cutoff = c.interference_cutoff_m;
  return s;
}

SweepConfig make_sweep_config(const ConfigFile& c) {
  SweepConfig s;
  for (double db : c.kappa_grid_db()) s.kappa_grid.push_back(db_to_linear(db));
  s.k_values = c.k_values;
  s.modes = c.modes;
  s.n_drops = c.n_drops;
  s.pc_iterations = c.pc_iterations;
  s.seed = c.seed;
  s.threads = c.threads;
  s.slot.mmse_samples = c.mmse_samples;
  s.slot.estimation_seed = c.seed;
  s.slot.enforce_peaks = c.enforce_peaks;
  return s;
}

nlohmann::json to_json(const ConfigFile& c) {
  nlohmann::json modes = nlohmann::json::array();
  for (auto m : c.modes) modes.push_back(std::string(to_string(m)));
  // JSON has no infinities; -inf (kappa = 0) is kept as a string.
  nlohmann::json kappa = nlohmann::json::array();
  for (double db : c.kappa_grid_db()) {
    if (std::isfinite(db)) {
      kappa.push_back(db);
    } else {
      kappa.push_back(fmt::format("{}", db));
    }
  }
  return {
      {"geometry",
       {{"cell_side_m", c.layout.cell_side},
        {"femto_grid_order", c.layout.femto_grid_order},
        {"femto_radius_m", c.layout.femto_radius},
        {"pathloss_3db_distance_m", c.layout.pathloss_3db_distance},
        {"pathloss_exponent", c.layout.pathloss_exponent},
        {"wall_loss_db", c.layout.wall_loss_db},
        {"interference_cutoff_m", c.interference_cutoff_m}}},
      {"radio",
       {{"macro_antennas", c.macro_antennas},
        {"femto_antennas", c.femto_antennas},
        {"edge_snr_db", c.edge_snr_db},
        {"macro_power_db", c.macro_power_db ? nlohmann::json(*c.macro_power_db)
                                            : nlohmann::json("auto")},
        {"femto_peak_power_db", c.femto_peak_power_db},
        {"macro_population", c.macro_population}}},
      {"sweep",
       {{"kappa_db", kappa},
        {"k_values", c.k_values},
        {"modes", modes},
        {"n_drops", c.n_drops},
        {"pc_iterations", c.pc_iterations},
        {"seed", c.seed},
        {"threads", c.threads},
        {"mmse_samples", c.mmse_samples},
        {"enforce_peaks", c.enforce_peaks}}},
  };
}

std::string default_config_text() {
  const ConfigFile c;
  return fmt::format(
      "[geometry]\n"
      "cell_side_m = {}\n"
      "femto_grid_order = {}\n"
      "femto_radius_m = {}\n"
      "pathloss_3db_distance_m = {}\n"
      "pathloss_exponent = {}\n"
      "wall_loss_db = {}\n"
      "interference_cutoff_m = {}\n"
      "\n"
      "[radio]\n"
      "macro_antennas = {}\n"
      "femto_antennas = {}\n"
      "edge_snr_db = {}\n"
      "macro_power_db = auto\n"
      "femto_peak_power_db = {}\n"
      "macro_population = {}\n"
      "\n"
      "[sweep]\n"
      "kappa_db_min = {}\n"
      "kappa_db_max = {}\n"
      "kappa_points = {}\n"
      "k_values = {}\n"
      "modes = colocated, uniform\n"
      "n_drops = {}\n"
      "pc_iterations = {}\n"
      "seed = {}\n"
      "threads = {}\n"
      "mmse_samples = {}\n"
      "enforce_peaks = true\n",
      c.layout.cell_side, c.layout.femto_grid_order, c.layout.femto_radius,
      c.layout.pathloss_3db_distance, c.layout.pathloss_exponent, c.layout.wall_loss_db,
      c.interference_cutoff_m, c.macro_antennas, c.femto_antennas, c.edge_snr_db,
      c.femto_peak_power_db, c.macro_population, c.kappa_db_min, c.kappa_db_max,
      c.kappa_points, fmt::join(c.k_values, ", "), c.n_drops, fmt::join(c.pc_iterations, ", "),
      c.seed, c.threads, c.mmse_samples);
}

}  // namespace cogfemto
