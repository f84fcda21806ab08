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

#ifndef COGFEMTO_BEAMFORMING_HPP
#define COGFEMTO_BEAMFORMING_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "cogfemto/channel.hpp"
#include "cogfemto/linalg.hpp"
#include "cogfemto/scenario.hpp"

namespace cogfemto {

/// Unit-norm beamformers of one slot pair.
///
/// In the macro-DL/femto-UL slot (role `primal`) `macro` holds the LZFB
/// precoders v_k and `femto` the MMSE receive vectors u_f. After
/// duality_swap (role `dual`) the same vectors serve as the macro-UL receive
/// filters r_k and the femto-DL transmit precoders w_f.
struct BeamformerSet {
  enum class Role { primal, dual };

  Role role = Role::primal;
  std::vector<ComplexVector> macro;
  std::vector<ComplexVector> femto;

  friend bool operator==(const BeamformerSet&, const BeamformerSet&) = default;
};

/// Scales v to unit norm and rotates it so its largest-magnitude entry is
/// real and non-negative. A zero vector is returned unchanged.
ComplexVector normalize_beam(ComplexVector v);

/// Linear zero-forcing precoders: column i of pinv(H_mc)^H, normalized.
/// Propagates RankDeficientError from pseudo_inverse.
std::vector<ComplexVector> lzfb_precoders(const ComplexMatrix& h_mc);

/// Interference-plus-noise covariance at femto-BS f in the macro-DL/femto-UL
/// slot, for femto-UT powers `femto_powers` and macro precoders `precoders`
/// (equal split P0/K). The own-cell term is excluded.
ComplexMatrix femto_interference_covariance(std::size_t f,
                                            const ChannelRealization& real,
                                            const Scenario& scenario,
                                            std::span<const double> femto_powers,
                                            std::span<const ComplexVector> precoders);

/// Unit vector proportional to cov^{-1} h. Works with either the
/// interference-plus-noise covariance or the full received covariance.
ComplexVector mmse_receiver(const ComplexMatrix& cov, const ComplexVector& h);

/// Received-signal covariance K_f = Sigma_f + P_f h h^H, with h the own
/// channel including its pathloss scale.
ComplexMatrix received_covariance(const ComplexMatrix& sigma, const ComplexVector& h,
                                  double power);

/// Sample estimate of K_f from `samples` simulated received vectors at
/// femto-BS f, using Gaussian symbols of the given powers.
ComplexMatrix estimate_received_covariance(std::size_t f, const ChannelRealization& real,
                                           const Scenario& scenario,
                                           std::span<const double> femto_powers,
                                           std::span<const ComplexVector> precoders,
                                           std::size_t samples, Rng& rng);

/// Reinterprets the beamformers for the reverse slot (w_f = u_f, r_k = v_k).
/// The vectors are untouched; only the role flips, so the swap is an
/// involution.
BeamformerSet duality_swap(BeamformerSet bf);

}  // namespace cogfemto

#endif  // COGFEMTO_BEAMFORMING_HPP
