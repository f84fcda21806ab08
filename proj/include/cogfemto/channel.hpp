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

#ifndef COGFEMTO_CHANNEL_HPP
#define COGFEMTO_CHANNEL_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "cogfemto/linalg.hpp"
#include "cogfemto/scenario.hpp"
#include "cogfemto/scheduler.hpp"

namespace cogfemto {

/// Link between the macro-BS array and macro-UT `user` (length-M vector).
struct MacroUserLink {
  std::size_t user;
};
/// Link between the macro-BS array and femto-BS `femto` (M x L matrix).
struct FemtoMacroLink {
  std::size_t femto;
};
/// Link between femto-BS `bs` and the femto-UT of cell `ut` (length-L vector).
/// bs == ut is the own-cell link.
struct FemtoCrossLink {
  std::size_t bs;
  std::size_t ut;
};
/// Scalar link between macro-UT `user` and the femto-UT of cell `femto`.
struct UserFemtoLink {
  std::size_t user;
  std::size_t femto;
};

/// The femto-side part of a realization. It does not depend on which macro
/// users are scheduled, so realizations restricted to fewer users share it.
struct FemtoField {
  std::size_t femto_count = 0;
  std::size_t antennas = 0;
  /// Fading of femto-BS bs <-> femto-UT ut, at [(bs * F + ut) * L + a].
  std::vector<cdouble> cross;
  /// g(bs, ut) at [bs * F + ut].
  std::vector<double> cross_gain;
  /// H_{f,0} fading, M x L per femtocell.
  std::vector<ComplexMatrix> macro_link;
  /// g(f, 0).
  std::vector<double> macro_link_gain;

  std::span<const cdouble> cross_fading(std::size_t bs, std::size_t ut) const {
    return {cross.data() + (bs * femto_count + ut) * antennas, antennas};
  }
  double cross_pathloss(std::size_t bs, std::size_t ut) const {
    return cross_gain[bs * femto_count + ut];
  }
};

/// Small-scale fading and large-scale gains of every link for one slot pair.
/// Both slot directions consume the same object (TDD reciprocity).
struct ChannelRealization {
  ScheduleDecision schedule;
  std::vector<ComplexVector> macro_user;  // h_{mc,k}, length M
  std::vector<double> macro_user_gain;    // g(k, 0)
  std::vector<cdouble> user_femto;        // h_{k,f} at [k * F + f]
  std::vector<double> user_femto_gain;    // g(k, f) at [k * F + f]
  std::shared_ptr<const FemtoField> femto;

  std::size_t user_count() const { return macro_user.size(); }
  std::size_t femto_count() const { return femto ? femto->femto_count : 0; }

  cdouble user_femto_fading(std::size_t k, std::size_t f) const {
    return user_femto[k * femto_count() + f];
  }
  double user_femto_pathloss(std::size_t k, std::size_t f) const {
    return user_femto_gain[k * femto_count() + f];
  }

  /// H_mc = [h_{mc,1} ... h_{mc,K}], M x K, fading only.
  ComplexMatrix macro_matrix() const;

  /// The same realization restricted to the first `k` users.
  ChannelRealization prefix(std::size_t k) const;
};

/// Circularly symmetric CN(0, 1) sample: independent real and imaginary
/// parts, each of variance 1/2.
cdouble draw_cn01(Rng& rng);

/// Draws i.i.d. CN(0,1) fading for every link of the schedule and evaluates
/// the large-scale gains from the positions.
ChannelRealization draw_realization(const Scenario& scenario,
                                    const ScheduleDecision& schedule, Rng& rng);

/// sqrt(g) times the stored fading. Throws std::out_of_range on an unknown
/// link index.
ComplexVector link_gain(const ChannelRealization& real, const MacroUserLink& id);
ComplexMatrix link_gain(const ChannelRealization& real, const FemtoMacroLink& id);
ComplexVector link_gain(const ChannelRealization& real, const FemtoCrossLink& id);
cdouble link_gain(const ChannelRealization& real, const UserFemtoLink& id);

}  // namespace cogfemto

#endif  // COGFEMTO_CHANNEL_HPP
