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

#include "cogfemto/sinr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace cogfemto {

namespace {

void require_role(const BeamformerSet& bf, BeamformerSet::Role role, const char* who) {
  if (bf.role != role) {
    throw std::invalid_argument(fmt::format("{}: beamformers have the wrong role", who));
  }
}

// |v^H H_{f,0} w|^2 for M x L fading matrix H.
double bilinear_power(const ComplexVector& v, const ComplexMatrix& h, const ComplexVector& w) {
  cdouble acc = 0.0;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    cdouble hw = 0.0;
    for (std::size_t c = 0; c < h.cols(); ++c) hw += h(r, c) * w[c];
    acc += std::conj(v[r]) * hw;
  }
  return std::norm(acc);
}

}  // namespace

double DualPowers::total() const {
  return std::accumulate(macro.begin(), macro.end(), 0.0) +
         std::accumulate(femto.begin(), femto.end(), 0.0);
}

double rate(double sinr) {
  if (sinr < 0.0) throw std::invalid_argument("rate: negative SINR");
  return std::log2(1.0 + sinr);
}

double sinr_macro_dl(std::size_t k, const ChannelRealization& real,
                     const BeamformerSet& bf, std::span<const double> femto_powers,
                     const Scenario& scenario) {
  require_role(bf, BeamformerSet::Role::primal, "sinr_macro_dl");
  const std::size_t users = real.user_count();
  const double signal = real.macro_user_gain.at(k) *
                        std::norm(dot(real.macro_user[k], bf.macro.at(k))) *
                        scenario.macro_power / static_cast<double>(users);
  double interference = 1.0;
  for (std::size_t f = 0; f < real.femto_count(); ++f) {
    interference += real.user_femto_pathloss(k, f) *
                    std::norm(real.user_femto_fading(k, f)) * femto_powers[f];
  }
  return signal / interference;
}

double sinr_femto_ul(std::size_t f, const ChannelRealization& real,
                     const BeamformerSet& bf, std::span<const double> femto_powers,
                     const Scenario& scenario) {
  require_role(bf, BeamformerSet::Role::primal, "sinr_femto_ul");
  if (femto_powers[f] == 0.0) return 0.0;
  const ComplexMatrix sigma =
      femto_interference_covariance(f, real, scenario, femto_powers, bf.macro);
  const ComplexVector h = link_gain(real, FemtoCrossLink{f, f});
  const ComplexVector x = hermitian_solve(sigma, h);
  return femto_powers[f] * std::max(0.0, dot(h, x).real());
}

double sinr_macro_ul(std::size_t k, const ChannelRealization& real,
                     const BeamformerSet& bf_swapped, const DualPowers& powers,
                     const Scenario& /*scenario*/) {
  require_role(bf_swapped, BeamformerSet::Role::dual, "sinr_macro_ul");
  const ComplexVector& r = bf_swapped.macro.at(k);
  const double signal = real.macro_user_gain.at(k) * powers.macro.at(k) *
                        std::norm(dot(r, real.macro_user[k]));
  double interference = 1.0;
  const FemtoField& field = *real.femto;
  for (std::size_t f = 0; f < field.femto_count; ++f) {
    if (powers.femto[f] == 0.0) continue;
    interference += field.macro_link_gain[f] * powers.femto[f] *
                    bilinear_power(r, field.macro_link[f], bf_swapped.femto[f]);
  }
  return signal / interference;
}

double sinr_femto_dl(std::size_t f, const ChannelRealization& real,
                     const BeamformerSet& bf_swapped, const DualPowers& powers,
                     const Scenario& /*scenario*/) {
  require_role(bf_swapped, BeamformerSet::Role::dual, "sinr_femto_dl");
  const FemtoField& field = *real.femto;
  const auto own = field.cross_fading(f, f);
  const double signal = field.cross_pathloss(f, f) * powers.femto.at(f) *
                        std::norm(dot(own, bf_swapped.femto[f].values()));
  double interference = 1.0;
  for (std::size_t j = 0; j < field.femto_count; ++j) {
    if (j == f || powers.femto[j] == 0.0) continue;
    interference += field.cross_pathloss(j, f) * powers.femto[j] *
                    std::norm(dot(field.cross_fading(j, f), bf_swapped.femto[j].values()));
  }
  for (std::size_t k = 0; k < real.user_count(); ++k) {
    interference += real.user_femto_pathloss(k, f) *
                    std::norm(real.user_femto_fading(k, f)) * powers.macro[k];
  }
  return signal / interference;
}

// ---------------------------------------------------------------- network

InterferenceNetwork::InterferenceNetwork(std::size_t macro_count, std::size_t femto_count)
    : macro_count_(macro_count),
      femto_count_(femto_count),
      gains_((macro_count + femto_count) * (macro_count + femto_count), 0.0) {}

InterferenceNetwork InterferenceNetwork::transposed() const {
  InterferenceNetwork out(macro_count_, femto_count_);
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.gains_[j * n + i] = gains_[i * n + j];
  return out;
}

double InterferenceNetwork::sinr(std::size_t node, std::span<const double> powers) const {
  const std::size_t n = size();
  const double* row = gains_.data() + node * n;
  double interference = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != node) interference += row[j] * powers[j];
  }
  return row[node] * powers[node] / interference;
}

std::vector<double> InterferenceNetwork::sinrs(std::span<const double> powers) const {
  if (powers.size() != size()) {
    throw DimensionError(fmt::format("{} powers for {} nodes", powers.size(), size()));
  }
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = sinr(i, powers);
  return out;
}

std::vector<double> stack_powers(std::span<const double> macro,
                                 std::span<const double> femto) {
  std::vector<double> out(macro.begin(), macro.end());
  out.insert(out.end(), femto.begin(), femto.end());
  return out;
}

InterferenceNetwork primal_network(const ChannelRealization& real, const BeamformerSet& bf) {
  require_role(bf, BeamformerSet::Role::primal, "primal_network");
  const std::size_t users = real.user_count();
  const std::size_t nf = real.femto_count();
  InterferenceNetwork net(users, nf);

  for (std::size_t k = 0; k < users; ++k) {
    const std::size_t rx = net.macro_node(k);
    net.gain(rx, rx) = real.macro_user_gain[k] * std::norm(dot(real.macro_user[k], bf.macro[k]));
    for (std::size_t f = 0; f < nf; ++f) {
      net.gain(rx, net.femto_node(f)) =
          real.user_femto_pathloss(k, f) * std::norm(real.user_femto_fading(k, f));
    }
  }

  if (nf == 0) return net;
  const FemtoField& field = *real.femto;
  for (std::size_t f = 0; f < nf; ++f) {
    const std::size_t rx = net.femto_node(f);
    const auto u = bf.femto[f].values();
    for (std::size_t j = 0; j < nf; ++j) {
      const double g = field.cross_pathloss(f, j);
      if (g == 0.0) continue;
      net.gain(rx, net.femto_node(j)) = g * std::norm(dot(u, field.cross_fading(f, j)));
    }
    for (std::size_t k = 0; k < users; ++k) {
      // |u^H H^H v|^2 = |v^H H u|^2
      net.gain(rx, net.macro_node(k)) =
          field.macro_link_gain[f] * bilinear_power(bf.macro[k], field.macro_link[f], bf.femto[f]);
    }
  }
  return net;
}

InterferenceNetwork dual_network(const ChannelRealization& real,
                                 const BeamformerSet& bf_swapped) {
  require_role(bf_swapped, BeamformerSet::Role::dual, "dual_network");
  const std::size_t users = real.user_count();
  const std::size_t nf = real.femto_count();
  InterferenceNetwork net(users, nf);

  for (std::size_t k = 0; k < users; ++k) {
    const std::size_t rx = net.macro_node(k);
    const ComplexVector& r = bf_swapped.macro[k];
    net.gain(rx, rx) = real.macro_user_gain[k] * std::norm(dot(r, real.macro_user[k]));
    for (std::size_t f = 0; f < nf; ++f) {
      const FemtoField& field = *real.femto;
      net.gain(rx, net.femto_node(f)) =
          field.macro_link_gain[f] * bilinear_power(r, field.macro_link[f], bf_swapped.femto[f]);
    }
  }

  if (nf == 0) return net;
  const FemtoField& field = *real.femto;
  for (std::size_t f = 0; f < nf; ++f) {
    const std::size_t rx = net.femto_node(f);
    for (std::size_t j = 0; j < nf; ++j) {
      const double g = field.cross_pathloss(j, f);
      if (g == 0.0) continue;
      net.gain(rx, net.femto_node(j)) =
          g * std::norm(dot(field.cross_fading(j, f), bf_swapped.femto[j].values()));
    }
    for (std::size_t k = 0; k < users; ++k) {
      net.gain(rx, net.macro_node(k)) =
          real.user_femto_pathloss(k, f) * std::norm(real.user_femto_fading(k, f));
    }
  }
  return net;
}

}  // namespace cogfemto
