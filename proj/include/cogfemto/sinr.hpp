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

#ifndef COGFEMTO_SINR_HPP
#define COGFEMTO_SINR_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "cogfemto/beamforming.hpp"
#include "cogfemto/channel.hpp"
#include "cogfemto/scenario.hpp"

namespace cogfemto {

/// Transmit powers of the macro-UL/femto-DL slot: Q_{mc,k} per macro user
/// and Q_f per femto-BS.
struct DualPowers {
  std::vector<double> macro;
  std::vector<double> femto;

  double total() const;
  friend bool operator==(const DualPowers&, const DualPowers&) = default;
};

/// Spectral efficiency log2(1 + sinr) in bit/s/Hz.
double rate(double sinr);

// Direct evaluators, straight from the received-signal models. They recompute
// everything per call and are meant for single links and cross-checks; the
// slot loops go through InterferenceNetwork instead.

/// Macro-DL SINR of user k under LZFB with equal power split.
double sinr_macro_dl(std::size_t k, const ChannelRealization& real,
                     const BeamformerSet& bf, std::span<const double> femto_powers,
                     const Scenario& scenario);

/// Femto-UL SINR at femto-BS f with the MMSE receiver:
/// P_f h^H Sigma_f^{-1} h, h including sqrt(g(f,f)).
double sinr_femto_ul(std::size_t f, const ChannelRealization& real,
                     const BeamformerSet& bf, std::span<const double> femto_powers,
                     const Scenario& scenario);

/// Macro-UL SINR of user k at the macro-BS with receive filter r_k.
double sinr_macro_ul(std::size_t k, const ChannelRealization& real,
                     const BeamformerSet& bf_swapped, const DualPowers& powers,
                     const Scenario& scenario);

/// Femto-DL SINR at the femto-UT of cell f with transmit precoders w_j.
double sinr_femto_dl(std::size_t f, const ChannelRealization& real,
                     const BeamformerSet& bf_swapped, const DualPowers& powers,
                     const Scenario& scenario);

/// Linear interference network with fixed beamformers: node i sees
/// SINR_i = G_ii p_i / (1 + sum_{j != i} G_ij p_j). Nodes 0..K-1 are the
/// macro users, nodes K..K+F-1 the femtocells.
class InterferenceNetwork {
 public:
  InterferenceNetwork(std::size_t macro_count, std::size_t femto_count);

  std::size_t macro_count() const noexcept { return macro_count_; }
  std::size_t femto_count() const noexcept { return femto_count_; }
  std::size_t size() const noexcept { return macro_count_ + femto_count_; }

  std::size_t macro_node(std::size_t k) const { return k; }
  std::size_t femto_node(std::size_t f) const { return macro_count_ + f; }

  double& gain(std::size_t rx, std::size_t tx) { return gains_[rx * size() + tx]; }
  double gain(std::size_t rx, std::size_t tx) const { return gains_[rx * size() + tx]; }

  /// Network with every link reversed (G transposed).
  InterferenceNetwork transposed() const;

  /// SINR of every node for the stacked power vector [macro..., femto...].
  std::vector<double> sinrs(std::span<const double> powers) const;
  double sinr(std::size_t node, std::span<const double> powers) const;

 private:
  std::size_t macro_count_;
  std::size_t femto_count_;
  std::vector<double> gains_;
};

/// Stacks per-class powers in network node order.
std::vector<double> stack_powers(std::span<const double> macro,
                                 std::span<const double> femto);

/// Couplings of the macro-DL/femto-UL slot: receivers are the macro users
/// and the femto-BSs (through u_f); transmitters are the macro streams (v_k)
/// and the femto-UTs. Inter-stream macro terms are zero by ZF.
InterferenceNetwork primal_network(const ChannelRealization& real, const BeamformerSet& bf);

/// Couplings of the macro-UL/femto-DL slot, built from the channels with
/// r_k and w_f. Inter-user macro terms are zero by ZF.
InterferenceNetwork dual_network(const ChannelRealization& real,
                                 const BeamformerSet& bf_swapped);

}  // namespace cogfemto

#endif  // COGFEMTO_SINR_HPP
