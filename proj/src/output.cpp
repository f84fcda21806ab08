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

#include "cogfemto/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

namespace cogfemto {

namespace {

std::string kappa_db_text(double kappa) { return format_double(linear_to_db(kappa)); }

void append_point_fields(std::string& out, const TradeoffPoint& p) {
  out += fmt::format("{},{},{},{},{},{},{}\n", p.k, kappa_db_text(p.kappa),
                     format_double(p.macro_mean), format_double(p.macro_stderr),
                     format_double(p.femto_mean), format_double(p.femto_stderr), p.n_drops);
}

}  // namespace

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

std::string curve_file_name(const TradeoffCurve& curve) {
  if (curve.direction == SlotDirection::macro_dl_femto_ul) {
    return fmt::format("{}_dl.csv", to_string(curve.mode));
  }
  return fmt::format("{}_ul_n{}.csv", to_string(curve.mode), curve.pc_iterations);
}

std::string sweep_csv(const std::vector<TradeoffCurve>& curves) {
  std::string out = std::string(kSweepCsvHeader) + "\n";
  for (const auto& c : curves)
    for (const auto& p : c.points) append_point_fields(out, p);
  return out;
}

std::string pareto_csv(const std::vector<TradeoffCurve>& boundaries) {
  std::string out = std::string(kParetoCsvHeader) + "\n";
  for (const auto& b : boundaries) {
    for (const auto& p : b.points) {
      out += fmt::format("{},{},{},", to_string(b.mode), to_string(b.direction),
                         b.pc_iterations);
      append_point_fields(out, p);
    }
  }
  return out;
}

std::vector<std::string> write_sweep_outputs(const std::filesystem::path& dir,
                                             const std::vector<TradeoffCurve>& curves) {
  std::filesystem::create_directories(dir);
  // Keep first-appearance order so file contents do not depend on map order.
  std::vector<std::string> names;
  std::map<std::string, std::vector<TradeoffCurve>> groups;
  for (const auto& c : curves) {
    const std::string name = curve_file_name(c);
    if (!groups.contains(name)) names.push_back(name);
    groups[name].push_back(c);
  }

  std::vector<TradeoffCurve> boundaries;
  for (const auto& name : names) {
    auto& group = groups[name];
    std::stable_sort(group.begin(), group.end(),
                     [](const TradeoffCurve& a, const TradeoffCurve& b) { return a.k < b.k; });
    write_text_file(dir / name, sweep_csv(group));
    boundaries.push_back(pareto_boundary(group));
  }
  write_text_file(dir / "pareto.csv", pareto_csv(boundaries));
  names.push_back("pareto.csv");
  return names;
}

std::string slot_csv(const ScheduleDecision& schedule, const SlotResult& dl,
                     const SlotResult& ul) {
  std::string out = std::string(kSlotCsvHeader) + "\n";
  const auto rows = [&](const SlotResult& r, const std::vector<double>& macro_power,
                        const std::vector<double>& femto_power) {
    const std::string dir(to_string(r.direction));
    for (std::size_t k = 0; k < r.macro_sinr.size(); ++k) {
      const Position& p = schedule.macro_positions[k];
      out += fmt::format("{},macro_ut,{},{},{},{},{},{}\n", dir, k, format_double(p.x),
                         format_double(p.y), format_double(macro_power[k]),
                         format_double(r.macro_sinr[k]), format_double(r.macro_rates[k]));
    }
    for (std::size_t f = 0; f < r.femto_sinr.size(); ++f) {
      const Position& p = schedule.femto_ut_positions[f];
      out += fmt::format("{},femto,{},{},{},{},{},{}\n", dir, f, format_double(p.x),
                         format_double(p.y), format_double(femto_power[f]),
                         format_double(r.femto_sinr[f]), format_double(r.femto_rates[f]));
    }
  };
  rows(dl, std::vector<double>(dl.macro_sinr.size(), dl.powers.macro_primal_per_user),
       dl.powers.femto_primal);
  rows(ul, ul.powers.dual.macro, ul.powers.dual.femto);
  return out;
}

std::string trace_csv(const SlotResult& ul) {
  std::string out = std::string(kTraceCsvHeader) + "\n";
  for (const auto& rec : ul.powers.trace) {
    for (std::size_t k = 0; k < rec.powers.macro.size(); ++k) {
      out += fmt::format("{},macro_ut,{},{},{}\n", rec.iteration, k,
                         format_double(rec.powers.macro[k]), format_double(rec.macro_sinr[k]));
    }
    for (std::size_t f = 0; f < rec.powers.femto.size(); ++f) {
      out += fmt::format("{},femto_bs,{},{},{}\n", rec.iteration, f,
                         format_double(rec.powers.femto[f]), format_double(rec.femto_sinr[f]));
    }
  }
  return out;
}

nlohmann::json RunManifest::to_json() const {
  return {
      {"command", command},
      {"tool_version", tool_version},
      {"csv_schema_version", kCsvSchemaVersion},
      {"seed", seed},
      {"wall_clock_seconds", wall_clock_seconds},
      {"config", config},
      {"outputs", outputs},
  };
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw std::runtime_error(fmt::format("write failed for '{}'", path.string()));
}

}  // namespace cogfemto
