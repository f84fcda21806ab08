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

#include "cogfemto/beamforming.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace cogfemto {

ComplexVector normalize_beam(ComplexVector v) {
  const double n = v.norm();
  if (n == 0.0) return v;
  std::size_t peak = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[peak])) peak = i;
  }
  const cdouble phase = std::conj(v[peak]) / std::abs(v[peak]);
  v *= phase / n;
  v[peak] = std::abs(v[peak]);
  return v;
}

std::vector<ComplexVector> lzfb_precoders(const ComplexMatrix& h_mc) {
  const ComplexMatrix pinv = pseudo_inverse(h_mc);  // K x M
  std::vector<ComplexVector> v;
  v.reserve(pinv.rows());
  for (std::size_t i = 0; i < pinv.rows(); ++i) {
    // Column i of pinv^H is the conjugate of row i of pinv.
    ComplexVector col(pinv.cols());
    for (std::size_t r = 0; r < pinv.cols(); ++r) col[r] = std::conj(pinv(i, r));
    v.push_back(normalize_beam(std::move(col)));
  }
  return v;
}

ComplexMatrix femto_interference_covariance(std::size_t f,
                                            const ChannelRealization& real,
                                            const Scenario& scenario,
                                            std::span<const double> femto_powers,
                                            std::span<const ComplexVector> precoders) {
  const FemtoField& field = *real.femto;
  const std::size_t nf = field.femto_count;
  const std::size_t l = field.antennas;
  if (f >= nf) throw std::out_of_range(fmt::format("femtocell {} out of {}", f, nf));
  if (femto_powers.size() != nf) {
    throw DimensionError(fmt::format("{} femto powers for {} femtocells",
                                     femto_powers.size(), nf));
  }

  ComplexMatrix sigma = ComplexMatrix::identity(l);
  for (std::size_t j = 0; j < nf; ++j) {
    if (j == f) continue;
    const double c = field.cross_pathloss(f, j) * femto_powers[j];
    if (c == 0.0) continue;
    accumulate_rank_one_upper(sigma, field.cross_fading(f, j), c);
  }

  if (!precoders.empty()) {
    const double c = field.macro_link_gain[f] * scenario.macro_power /
                     static_cast<double>(precoders.size());
    const ComplexMatrix& h = field.macro_link[f];  // M x L
    std::vector<cdouble> row(l);
    for (const ComplexVector& v : precoders) {
      // row = conj(v^H H), so that row row^H = H^H v v^H H.
      for (std::size_t a = 0; a < l; ++a) {
        cdouble acc = 0.0;
        for (std::size_t r = 0; r < h.rows(); ++r) acc += std::conj(v[r]) * h(r, a);
        row[a] = std::conj(acc);
      }
      accumulate_rank_one_upper(sigma, row, c);
    }
  }
  hermitize_from_upper(sigma);
  return sigma;
}

ComplexVector mmse_receiver(const ComplexMatrix& cov, const ComplexVector& h) {
  return normalize_beam(hermitian_solve(cov, h));
}

ComplexMatrix received_covariance(const ComplexMatrix& sigma, const ComplexVector& h,
                                  double power) {
  return rank_one_update(sigma, h, power);
}

ComplexMatrix estimate_received_covariance(std::size_t f, const ChannelRealization& real,
                                           const Scenario& scenario,
                                           std::span<const double> femto_powers,
                                           std::span<const ComplexVector> precoders,
                                           std::size_t samples, Rng& rng) {
  if (samples == 0) throw std::invalid_argument("estimate_received_covariance: no samples");
  const FemtoField& field = *real.femto;
  const std::size_t nf = field.femto_count;
  const std::size_t l = field.antennas;
  const std::size_t k_users = precoders.size();

  // Effective per-transmitter signatures at femto-BS f.
  std::vector<ComplexVector> signatures;
  std::vector<double> powers;
  for (std::size_t j = 0; j < nf; ++j) {
    if (femto_powers[j] == 0.0 || field.cross_pathloss(f, j) == 0.0) continue;
    signatures.push_back(link_gain(real, FemtoCrossLink{f, j}));
    powers.push_back(femto_powers[j]);
  }
  if (k_users > 0) {
    const ComplexMatrix hf0 = link_gain(real, FemtoMacroLink{f});
    for (const ComplexVector& v : precoders) {
      signatures.push_back(adjoint_times(hf0, v));
      powers.push_back(scenario.macro_power / static_cast<double>(k_users));
    }
  }

  ComplexMatrix acc(l, l);
  ComplexVector y(l);
  for (std::size_t n = 0; n < samples; ++n) {
    for (std::size_t a = 0; a < l; ++a) y[a] = draw_cn01(rng);
    for (std::size_t s = 0; s < signatures.size(); ++s) {
      const cdouble x = std::sqrt(powers[s]) * draw_cn01(rng);
      for (std::size_t a = 0; a < l; ++a) y[a] += signatures[s][a] * x;
    }
    accumulate_rank_one_upper(acc, y.values(), 1.0);
  }
  hermitize_from_upper(acc);
  acc *= 1.0 / static_cast<double>(samples);
  return acc;
}

BeamformerSet duality_swap(BeamformerSet bf) {
  bf.role = bf.role == BeamformerSet::Role::primal ? BeamformerSet::Role::dual
                                                   : BeamformerSet::Role::primal;
  return bf;
}

}  // namespace cogfemto
