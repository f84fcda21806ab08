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

#include "cogfemto/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/random/normal_distribution.hpp>
#include <fmt/format.h>

namespace cogfemto {

namespace {

// Boost's normal distribution uses the ziggurat method, which matters here:
// a full-scale realization needs about four million Gaussian samples.
using Normal = boost::random::normal_distribution<double>;

Normal half_variance_normal() { return Normal(0.0, std::numbers::sqrt2 / 2.0); }

void check_index(std::size_t i, std::size_t n, const char* what) {
  if (i >= n) throw std::out_of_range(fmt::format("{} index {} out of {}", what, i, n));
}

}  // namespace

void Scenario::validate() const {
  if (macro_antennas < 1) throw std::invalid_argument("macro_antennas must be >= 1");
  if (femto_antennas < 1) throw std::invalid_argument("femto_antennas must be >= 1");
  if (!(macro_power > 0.0)) throw std::invalid_argument("macro_power must be positive");
  if (!(femto_peak_power > 0.0)) {
    throw std::invalid_argument("femto_peak_power must be positive");
  }
  if (macro_population < 1) throw std::invalid_argument("macro_population must be >= 1");
  if (interference_cutoff && !(*interference_cutoff > 0.0)) {
    throw std::invalid_argument("interference_cutoff must be positive when set");
  }
}

cdouble draw_cn01(Rng& rng) {
  Normal n = half_variance_normal();
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

ComplexMatrix ChannelRealization::macro_matrix() const {
  return ComplexMatrix::from_columns(macro_user);
}

ChannelRealization ChannelRealization::prefix(std::size_t k) const {
  if (k > user_count()) {
    throw std::out_of_range(fmt::format("prefix({}) of a {}-user realization", k,
                                        user_count()));
  }
  const std::size_t f = femto_count();
  ChannelRealization out;
  out.schedule = schedule.prefix(k);
  out.macro_user.assign(macro_user.begin(),
                        macro_user.begin() + static_cast<std::ptrdiff_t>(k));
  out.macro_user_gain.assign(macro_user_gain.begin(),
                             macro_user_gain.begin() + static_cast<std::ptrdiff_t>(k));
  out.user_femto.assign(user_femto.begin(),
                        user_femto.begin() + static_cast<std::ptrdiff_t>(k * f));
  out.user_femto_gain.assign(user_femto_gain.begin(),
                             user_femto_gain.begin() + static_cast<std::ptrdiff_t>(k * f));
  out.femto = femto;
  return out;
}

ChannelRealization draw_realization(const Scenario& scenario,
                                    const ScheduleDecision& schedule, Rng& rng) {
  const Layout& layout = scenario.layout;
  const std::size_t m = scenario.macro_antennas;
  const std::size_t l = scenario.femto_antennas;
  const std::size_t k_users = schedule.user_count();
  const std::size_t nf = layout.femto_count();
  if (k_users > m) {
    throw std::invalid_argument(
        fmt::format("draw_realization: {} users exceed {} antennas", k_users, m));
  }
  if (schedule.femto_ut_positions.size() != nf) {
    throw std::invalid_argument(fmt::format(
        "draw_realization: {} femto-UT positions for {} femtocells",
        schedule.femto_ut_positions.size(), nf));
  }

  Normal normal = half_variance_normal();
  const auto cn = [&] {
    const double re = normal(rng);
    const double im = normal(rng);
    return cdouble(re, im);
  };
  const auto within_cutoff = [&](const Position& a, const Position& b) {
    return !scenario.interference_cutoff ||
           torus_distance(a, b, layout.cell_side()) <= *scenario.interference_cutoff;
  };

  ChannelRealization real;
  real.schedule = schedule;
  const Position macro_bs = Layout::macro_bs();

  real.macro_user.reserve(k_users);
  for (std::size_t k = 0; k < k_users; ++k) {
    ComplexVector h(m);
    for (std::size_t a = 0; a < m; ++a) h[a] = cn();
    real.macro_user.push_back(std::move(h));
    real.macro_user_gain.push_back(pathloss(macro_bs, schedule.macro_positions[k], layout));
  }

  auto field = std::make_shared<FemtoField>();
  field->femto_count = nf;
  field->antennas = l;
  field->macro_link.reserve(nf);
  field->macro_link_gain.reserve(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    ComplexMatrix h(m, l);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < l; ++c) h(r, c) = cn();
    field->macro_link.push_back(std::move(h));
    field->macro_link_gain.push_back(pathloss(layout.femto_bs(f), macro_bs, layout));
  }

  field->cross.resize(nf * nf * l);
  for (auto& z : field->cross) z = cn();
  field->cross_gain.resize(nf * nf);
  for (std::size_t bs = 0; bs < nf; ++bs) {
    const Position bs_pos = layout.femto_bs(bs);
    for (std::size_t ut = 0; ut < nf; ++ut) {
      const Position& ut_pos = schedule.femto_ut_positions[ut];
      const bool keep = bs == ut || within_cutoff(bs_pos, ut_pos);
      field->cross_gain[bs * nf + ut] = keep ? pathloss(bs_pos, ut_pos, layout) : 0.0;
    }
  }
  real.femto = std::move(field);

  real.user_femto.resize(k_users * nf);
  for (auto& z : real.user_femto) z = cn();
  real.user_femto_gain.resize(k_users * nf);
  for (std::size_t k = 0; k < k_users; ++k) {
    const Position& user = schedule.macro_positions[k];
    for (std::size_t f = 0; f < nf; ++f) {
      const Position& ut = schedule.femto_ut_positions[f];
      real.user_femto_gain[k * nf + f] =
          within_cutoff(user, ut) ? pathloss(user, ut, layout) : 0.0;
    }
  }
  return real;
}

ComplexVector link_gain(const ChannelRealization& real, const MacroUserLink& id) {
  check_index(id.user, real.user_count(), "macro user");
  return std::sqrt(real.macro_user_gain[id.user]) * real.macro_user[id.user];
}

ComplexMatrix link_gain(const ChannelRealization& real, const FemtoMacroLink& id) {
  check_index(id.femto, real.femto_count(), "femtocell");
  ComplexMatrix h = real.femto->macro_link[id.femto];
  h *= std::sqrt(real.femto->macro_link_gain[id.femto]);
  return h;
}

ComplexVector link_gain(const ChannelRealization& real, const FemtoCrossLink& id) {
  check_index(id.bs, real.femto_count(), "femto-BS");
  check_index(id.ut, real.femto_count(), "femto-UT");
  const auto fading = real.femto->cross_fading(id.bs, id.ut);
  ComplexVector h(std::vector<cdouble>(fading.begin(), fading.end()));
  h *= std::sqrt(real.femto->cross_pathloss(id.bs, id.ut));
  return h;
}

cdouble link_gain(const ChannelRealization& real, const UserFemtoLink& id) {
  check_index(id.user, real.user_count(), "macro user");
  check_index(id.femto, real.femto_count(), "femtocell");
  return std::sqrt(real.user_femto_pathloss(id.user, id.femto)) *
         real.user_femto_fading(id.user, id.femto);
}

}  // namespace cogfemto
