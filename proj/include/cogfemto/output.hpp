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

#ifndef COGFEMTO_OUTPUT_HPP
#define COGFEMTO_OUTPUT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "cogfemto/engine.hpp"

namespace cogfemto {

inline constexpr int kCsvSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

inline constexpr const char* kSweepCsvHeader =
    "K,kappa_db,macro_sum_mean,macro_sum_stderr,femto_sum_mean,femto_sum_stderr,n_drops";
inline constexpr const char* kParetoCsvHeader =
    "mode,direction,pc_iterations,K,kappa_db,macro_sum_mean,macro_sum_stderr,"
    "femto_sum_mean,femto_sum_stderr,n_drops";
inline constexpr const char* kSlotCsvHeader =
    "direction,node_type,node_id,x_m,y_m,power,sinr,rate";
inline constexpr const char* kTraceCsvHeader = "iteration,node_type,node_id,power,sinr";

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double x);

/// File name for one (mode, direction, iterations) group, e.g.
/// "colocated_dl.csv" or "uniform_ul_n6.csv".
std::string curve_file_name(const TradeoffCurve& curve);

/// One CSV body for curves that share mode, direction and iteration count;
/// rows ordered by K then kappa.
std::string sweep_csv(const std::vector<TradeoffCurve>& curves);
std::string pareto_csv(const std::vector<TradeoffCurve>& boundaries);

/// Groups curves by file, writes them plus pareto.csv into `dir`, and
/// returns the written file names in writing order.
std::vector<std::string> write_sweep_outputs(const std::filesystem::path& dir,
                                             const std::vector<TradeoffCurve>& curves);

/// Per-node detail of one paired slot.
std::string slot_csv(const ScheduleDecision& schedule, const SlotResult& dl,
                     const SlotResult& ul);
/// Power-control trace, one row per (iteration, node).
std::string trace_csv(const SlotResult& ul);

struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  double wall_clock_seconds = 0.0;
  std::vector<std::string> outputs;

  nlohmann::json to_json() const;
};

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace cogfemto

#endif  // COGFEMTO_OUTPUT_HPP
