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

#include "cogfemto/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

namespace cogfemto {

namespace {

constexpr std::size_t kMaxDropAttempts = 16;

// Stream tags, so the schedule and fading substreams never collide.
constexpr std::uint64_t kScheduleStream = 0;
constexpr std::uint64_t kFadingStream = 1;

std::vector<double> rates_of(const std::vector<double>& sinr) {
  std::vector<double> out;
  out.reserve(sinr.size());
  for (double s : sinr) out.push_back(rate(s));
  return out;
}

double sum_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s;
}

void fill_rates(SlotResult& r) {
  r.macro_rates = rates_of(r.macro_sinr);
  r.femto_rates = rates_of(r.femto_sinr);
  r.macro_sum = sum_of(r.macro_rates);
  r.femto_sum = sum_of(r.femto_rates);
}

// Sums for one drop at every (K, kappa, series); series 0 is the
// macro-DL/femto-UL slot, series 1 + i the reverse slot after
// pc_iterations[i] steps.
struct DropSums {
  std::vector<double> macro;
  std::vector<double> femto;
};

class DropRunner {
 public:
  DropRunner(const Scenario& scenario, const SweepConfig& config)
      : scenario_(scenario), config_(config) {
    k_max_ = *std::max_element(config.k_values.begin(), config.k_values.end());
    n_iter_max_ = config.pc_iterations.empty()
                      ? 0
                      : *std::max_element(config.pc_iterations.begin(),
                                          config.pc_iterations.end());
  }

  std::size_t series() const { return 1 + config_.pc_iterations.size(); }
  std::size_t slots() const {
    return config_.k_values.size() * config_.kappa_grid.size() * series();
  }
  std::size_t index(std::size_t ik, std::size_t ikappa, std::size_t s) const {
    return (ik * config_.kappa_grid.size() + ikappa) * series() + s;
  }

  DropSums run(ScheduleMode mode, std::size_t drop) const {
    const auto mode_tag = static_cast<std::uint64_t>(mode);
    for (std::size_t attempt = 0; attempt < kMaxDropAttempts; ++attempt) {
      Rng sched_rng = make_stream(config_.seed, {mode_tag, drop, attempt, kScheduleStream});
      const ScheduleDecision schedule = draw_schedule(scenario_, mode, k_max_, sched_rng);
      Rng fading_rng = make_stream(config_.seed, {mode_tag, drop, attempt, kFadingStream});
      const ChannelRealization full = draw_realization(scenario_, schedule, fading_rng);
      try {
        return evaluate(full);
      } catch (const RankDeficientError&) {
        continue;  // degenerate fading, redraw the drop
      }
    }
    throw std::runtime_error(fmt::format(
        "drop {}: macro channel rank deficient in {} attempts", drop, kMaxDropAttempts));
  }

 private:
  DropSums evaluate(const ChannelRealization& full) const {
    DropSums out;
    out.macro.assign(slots(), 0.0);
    out.femto.assign(slots(), 0.0);
    for (std::size_t ik = 0; ik < config_.k_values.size(); ++ik) {
      const ChannelRealization real = full.prefix(config_.k_values[ik]);
      for (std::size_t ikappa = 0; ikappa < config_.kappa_grid.size(); ++ikappa) {
        const SlotResult dl = run_dl_slot(scenario_, real.schedule, real,
                                          config_.kappa_grid[ikappa], config_.slot);
        out.macro[index(ik, ikappa, 0)] = dl.macro_sum;
        out.femto[index(ik, ikappa, 0)] = dl.femto_sum;
        if (config_.pc_iterations.empty()) continue;

        const SlotResult ul = run_ul_slot(scenario_, real, dl, n_iter_max_, config_.slot);
        for (std::size_t s = 0; s < config_.pc_iterations.size(); ++s) {
          const IterationRecord& rec = ul.powers.trace.at(config_.pc_iterations[s]);
          out.macro[index(ik, ikappa, 1 + s)] = sum_of(rates_of(rec.macro_sinr));
          out.femto[index(ik, ikappa, 1 + s)] = sum_of(rates_of(rec.femto_sinr));
        }
      }
    }
    return out;
  }

  const Scenario& scenario_;
  const SweepConfig& config_;
  std::size_t k_max_ = 0;
  std::size_t n_iter_max_ = 0;
};

// Mean and standard error of xs in index order.
std::pair<double, double> mean_stderr(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / n;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  return {mean, sd / std::sqrt(n)};
}

}  // namespace

std::string_view to_string(SlotDirection direction) {
  switch (direction) {
    case SlotDirection::macro_dl_femto_ul:
      return "dl";
    case SlotDirection::macro_ul_femto_dl:
      return "ul";
  }
  return "unknown";
}

SlotResult run_dl_slot(const Scenario& scenario, const ScheduleDecision& schedule,
                       const ChannelRealization& real, double kappa,
                       const SlotOptions& options) {
  const std::size_t users = real.user_count();
  const std::size_t nf = real.femto_count();
  if (users == 0) throw std::invalid_argument("run_dl_slot: no scheduled users");

  SlotResult out;
  out.direction = SlotDirection::macro_dl_femto_ul;
  out.kappa = kappa;

  std::vector<double> femto_powers;
  if (nf > 0) {
    femto_powers = interference_temperature_powers(kappa, scenario.femto_peak_power,
                                                   schedule.macro_positions,
                                                   schedule.femto_ut_positions,
                                                   scenario.layout);
  }

  BeamformerSet bf;
  bf.role = BeamformerSet::Role::primal;
  bf.macro = lzfb_precoders(real.macro_matrix());
  bf.femto.reserve(nf);
  Rng estimation_rng = make_stream(options.estimation_seed, {users, nf});
  for (std::size_t f = 0; f < nf; ++f) {
    const ComplexVector own = link_gain(real, FemtoCrossLink{f, f});
    if (options.mmse_samples > 0) {
      const ComplexMatrix k_hat = estimate_received_covariance(
          f, real, scenario, femto_powers, bf.macro, options.mmse_samples, estimation_rng);
      bf.femto.push_back(mmse_receiver(k_hat, own));
    } else {
      const ComplexMatrix sigma =
          femto_interference_covariance(f, real, scenario, femto_powers, bf.macro);
      bf.femto.push_back(mmse_receiver(sigma, own));
    }
  }

  const double per_user = scenario.macro_power / static_cast<double>(users);
  const std::vector<double> macro_powers(users, per_user);
  const InterferenceNetwork net = primal_network(real, bf);
  const std::vector<double> sinr = net.sinrs(stack_powers(macro_powers, femto_powers));
  out.macro_sinr.assign(sinr.begin(), sinr.begin() + static_cast<std::ptrdiff_t>(users));
  out.femto_sinr.assign(sinr.begin() + static_cast<std::ptrdiff_t>(users), sinr.end());
  fill_rates(out);

  out.powers.femto_primal = femto_powers;
  out.powers.macro_primal_per_user = per_user;
  out.beams = std::move(bf);
  return out;
}

SlotResult run_ul_slot(const Scenario& scenario, const ChannelRealization& real,
                       const SlotResult& primal, std::size_t iterations,
                       const SlotOptions& options) {
  if (primal.direction != SlotDirection::macro_dl_femto_ul) {
    throw std::invalid_argument("run_ul_slot: needs a macro-DL/femto-UL result");
  }
  SlotResult out;
  out.direction = SlotDirection::macro_ul_femto_dl;
  out.kappa = primal.kappa;
  out.beams = duality_swap(primal.beams);

  SinrTargets targets;
  targets.kappa = primal.kappa;
  targets.macro = primal.macro_sinr;
  targets.femto = primal.femto_sinr;
  // Silenced femtocells stay silent in the reverse slot.
  for (std::size_t f = 0; f < targets.femto.size(); ++f) {
    if (primal.powers.femto_primal[f] == 0.0) targets.femto[f] = 0.0;
  }

  const std::size_t users = real.user_count();
  const double per_user = primal.powers.macro_primal_per_user;
  PowerAllocation alloc;
  alloc.femto_primal = primal.powers.femto_primal;
  alloc.macro_primal_per_user = per_user;
  DualPowers init;
  init.macro.assign(users, per_user);
  init.femto = alloc.femto_primal;
  std::optional<PeakLimits> peaks;
  if (options.enforce_peaks) peaks = PeakLimits{per_user, scenario.femto_peak_power};

  alloc.trace = iterate_power_control(targets, dual_network(real, out.beams), init,
                                      iterations, peaks);
  alloc.dual = alloc.trace.back().powers;
  out.macro_sinr = alloc.trace.back().macro_sinr;
  out.femto_sinr = alloc.trace.back().femto_sinr;
  fill_rates(out);
  out.powers = std::move(alloc);
  return out;
}

double calibrate_p0(const Layout& layout, double target_edge_snr_db) {
  Position edge = layout.locate(0.5 * layout.cell_side(), 0.0);
  edge.indoor_cell.reset();
  const double g = pathloss(Layout::macro_bs(), edge, layout);
  return db_to_linear(target_edge_snr_db) / g;
}

Scenario reference_scenario() {
  Scenario s;
  s.layout = Layout::build(LayoutParams{});
  s.macro_antennas = 8;
  s.femto_antennas = 5;
  s.macro_power = calibrate_p0(s.layout, 10.0);
  s.femto_peak_power = db_to_linear(30.0);
  return s;
}

void SweepConfig::validate(const Scenario& scenario) const {
  if (n_drops < 1) throw std::invalid_argument("n_drops must be >= 1");
  if (kappa_grid.empty()) throw std::invalid_argument("kappa grid is empty");
  for (double k : kappa_grid) {
    if (!(k >= 0.0)) throw std::invalid_argument("kappa values must be >= 0");
  }
  if (k_values.empty()) throw std::invalid_argument("K values are empty");
  for (std::size_t k : k_values) {
    if (k < 1 || k > scenario.macro_antennas) {
      throw std::invalid_argument(fmt::format("K = {} outside [1, M = {}]", k,
                                              scenario.macro_antennas));
    }
  }
  if (modes.empty()) throw std::invalid_argument("no scheduling modes");
}

std::vector<double> log_spaced_kappa(double min_db, double max_db, std::size_t points) {
  std::vector<double> out;
  if (points == 0) return out;
  if (points == 1) return {db_to_linear(min_db)};
  out.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    out.push_back(db_to_linear(min_db + t * (max_db - min_db)));
  }
  return out;
}

std::size_t resolve_thread_count(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("COGFEMTO_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

std::vector<TradeoffCurve> sweep(const Scenario& scenario, const SweepConfig& config) {
  scenario.validate();
  config.validate(scenario);
  const DropRunner runner(scenario, config);

  const std::size_t n_modes = config.modes.size();
  const std::size_t jobs = n_modes * config.n_drops;
  std::vector<DropSums> results(jobs);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (;;) {
      const std::size_t job = next.fetch_add(1);
      if (job >= jobs) return;
      try {
        results[job] = runner.run(config.modes[job / config.n_drops], job % config.n_drops);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(jobs);
        return;
      }
    }
  };
  const std::size_t threads = std::min(resolve_thread_count(config.threads), jobs);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  // Deterministic reduction: drops summed in index order.
  std::vector<TradeoffCurve> curves;
  std::vector<double> macro(config.n_drops);
  std::vector<double> femto(config.n_drops);
  for (std::size_t im = 0; im < n_modes; ++im) {
    for (std::size_t s = 0; s < runner.series(); ++s) {
      for (std::size_t ik = 0; ik < config.k_values.size(); ++ik) {
        TradeoffCurve curve;
        curve.mode = config.modes[im];
        curve.direction =
            s == 0 ? SlotDirection::macro_dl_femto_ul : SlotDirection::macro_ul_femto_dl;
        curve.k = config.k_values[ik];
        curve.pc_iterations = s == 0 ? 0 : config.pc_iterations[s - 1];
        for (std::size_t ikappa = 0; ikappa < config.kappa_grid.size(); ++ikappa) {
          const std::size_t slot = runner.index(ik, ikappa, s);
          for (std::size_t d = 0; d < config.n_drops; ++d) {
            macro[d] = results[im * config.n_drops + d].macro[slot];
            femto[d] = results[im * config.n_drops + d].femto[slot];
          }
          TradeoffPoint p;
          p.k = curve.k;
          p.kappa = config.kappa_grid[ikappa];
          std::tie(p.macro_mean, p.macro_stderr) = mean_stderr(macro);
          std::tie(p.femto_mean, p.femto_stderr) = mean_stderr(femto);
          p.n_drops = config.n_drops;
          curve.points.push_back(p);
        }
        curves.push_back(std::move(curve));
      }
    }
  }
  return curves;
}

TradeoffCurve pareto_boundary(const std::vector<TradeoffCurve>& curves) {
  TradeoffCurve out;
  if (curves.empty()) return out;
  out.mode = curves.front().mode;
  out.direction = curves.front().direction;
  out.pc_iterations = curves.front().pc_iterations;
  out.k = curves.size() == 1 ? curves.front().k : 0;

  std::vector<TradeoffPoint> all;
  for (const auto& c : curves) all.insert(all.end(), c.points.begin(), c.points.end());

  const auto dominates = [](const TradeoffPoint& a, const TradeoffPoint& b) {
    return a.macro_mean >= b.macro_mean && a.femto_mean >= b.femto_mean &&
           (a.macro_mean > b.macro_mean || a.femto_mean > b.femto_mean);
  };
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < all.size() && !dominated; ++j) {
      dominated = j != i && dominates(all[j], all[i]);
    }
    if (!dominated) out.points.push_back(all[i]);
  }
  std::stable_sort(out.points.begin(), out.points.end(),
                   [](const TradeoffPoint& a, const TradeoffPoint& b) {
                     if (a.macro_mean != b.macro_mean) return a.macro_mean < b.macro_mean;
                     return a.femto_mean > b.femto_mean;
                   });
  return out;
}

}  // namespace cogfemto
