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

#include <cmath>

#include <doctest.h>

#include "cogfemto/beamforming.hpp"
#include "cogfemto/engine.hpp"
#include "cogfemto/sinr.hpp"
#include "oracle.hpp"
#include "signal_oracle.hpp"

using namespace cogfemto;
using doctest::Approx;

namespace {

struct Slots {
  Scenario scenario;
  oracle::Drop drop;
  SlotResult dl;
  SlotResult ul;
};

Slots make_slots(std::uint64_t seed, std::size_t k = 4, double kappa = 0.1,
                 ScheduleMode mode = ScheduleMode::uniform) {
  Slots s{oracle::small_scenario(), {}, {}, {}};
  s.drop = oracle::draw_drop(s.scenario, mode, k, seed);
  s.dl = run_dl_slot(s.scenario, s.drop.schedule, s.drop.real, kappa);
  s.ul = run_ul_slot(s.scenario, s.drop.real, s.dl, 6);
  return s;
}

}  // namespace

TEST_SUITE("sinr") {

TEST_CASE("rate is log2(1 + sinr)") {
  CHECK(rate(0.0) == 0.0);
  CHECK(rate(1.0) == 1.0);
  CHECK(rate(1023.0) == Approx(10.0));
  CHECK_THROWS_AS((void)rate(-1e-3), std::invalid_argument);
}

TEST_CASE("macro-DL single user without femto interference") {
  const Scenario sc = oracle::small_scenario();
  const oracle::Drop d = oracle::draw_drop(sc, ScheduleMode::uniform, 1, 61);
  BeamformerSet bf;
  bf.macro = lzfb_precoders(d.real.macro_matrix());
  const std::vector<double> off(25, 0.0);
  const double want = d.real.macro_user_gain[0] * d.real.macro_user[0].squared_norm() * sc.macro_power;
  CHECK(sinr_macro_dl(0, d.real, bf, off, sc) == Approx(want).epsilon(1e-12));

  ChannelRealization dark = d.real;
  dark.macro_user_gain[0] = 0.0;
  CHECK(sinr_macro_dl(0, dark, bf, off, sc) == 0.0);
}

TEST_CASE("femto-UL trivial cases") {
  const Scenario sc = oracle::small_scenario();
  const oracle::Drop d = oracle::draw_drop(sc, ScheduleMode::uniform, 2, 62);
  BeamformerSet bf;  // no macro streams, so Sigma_f = I when the others are silent
  std::vector<double> p(25, 0.0);
  CHECK(sinr_femto_ul(3, d.real, bf, p, sc) == 0.0);
  p[3] = 7.0;
  const ComplexVector h = link_gain(d.real, FemtoCrossLink{3, 3});
  CHECK(sinr_femto_ul(3, d.real, bf, p, sc) == Approx(7.0 * h.squared_norm()).epsilon(1e-12));
}

TEST_CASE("quadratic form equals the explicit receiver SINR") {
  const Slots s = make_slots(63);
  for (std::size_t f = 0; f < 25; ++f) {
    if (s.dl.powers.femto_primal[f] == 0.0) continue;
    const ComplexMatrix sigma = femto_interference_covariance(
        f, s.drop.real, s.scenario, s.dl.powers.femto_primal, s.dl.beams.macro);
    const auto u = oracle::to_eigen(s.dl.beams.femto[f]);
    const auto h = oracle::to_eigen(link_gain(s.drop.real, FemtoCrossLink{f, f}));
    const double explicit_sinr = s.dl.powers.femto_primal[f] * std::norm(u.dot(h)) /
                                 (u.adjoint() * oracle::to_eigen(sigma) * u)(0, 0).real();
    const double q = sinr_femto_ul(f, s.drop.real, s.dl.beams, s.dl.powers.femto_primal, s.scenario);
    CHECK(oracle::rel_err(q, explicit_sinr) <= 1e-10);
  }
}

TEST_CASE("network SINRs agree with the direct evaluators") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Slots s = make_slots(640 + seed, 1 + seed);
    const auto& p = s.dl.powers.femto_primal;
    for (std::size_t k = 0; k < s.dl.macro_sinr.size(); ++k) {
      CHECK(oracle::rel_err(s.dl.macro_sinr[k],
                            sinr_macro_dl(k, s.drop.real, s.dl.beams, p, s.scenario)) < 1e-10);
      CHECK(oracle::rel_err(s.ul.macro_sinr[k],
                            sinr_macro_ul(k, s.drop.real, s.ul.beams, s.ul.powers.dual, s.scenario)) <
            1e-10);
    }
    for (std::size_t f = 0; f < 25; ++f) {
      const double ul = sinr_femto_ul(f, s.drop.real, s.dl.beams, p, s.scenario);
      CHECK(std::abs(s.dl.femto_sinr[f] - ul) <= 1e-10 * std::max(ul, 1e-12));
      const double dl = sinr_femto_dl(f, s.drop.real, s.ul.beams, s.ul.powers.dual, s.scenario);
      CHECK(std::abs(s.ul.femto_sinr[f] - dl) <= 1e-10 * std::max(dl, 1e-12));
    }
  }
}

TEST_CASE("the dual network is the transposed primal network") {
  const Slots s = make_slots(65, 5);
  const InterferenceNetwork primal = primal_network(s.drop.real, s.dl.beams);
  const InterferenceNetwork dual = dual_network(s.drop.real, s.ul.beams);
  const InterferenceNetwork t = primal.transposed();
  for (std::size_t i = 0; i < dual.size(); ++i) {
    for (std::size_t j = 0; j < dual.size(); ++j) {
      CHECK(dual.gain(i, j) == Approx(t.gain(i, j)).epsilon(1e-12).scale(1e-30));
    }
  }
  // ZF: the macro streams never see each other.
  for (std::size_t k = 0; k < 5; ++k)
    for (std::size_t j = 0; j < 5; ++j)
      if (j != k) CHECK(primal.gain(k, j) == 0.0);
}

TEST_CASE("signal-domain measurement matches all four evaluators") {
  const Slots s = make_slots(66, 3, 0.3);
  const auto& p = s.dl.powers.femto_primal;
  const std::size_t n = 100000;
  for (std::size_t k = 0; k < 3; ++k) {
    const double a = sinr_macro_dl(k, s.drop.real, s.dl.beams, p, s.scenario);
    CHECK(oracle::rel_err(oracle::empirical_macro_dl(k, s.drop.real, s.dl.beams, p, s.scenario, n, 100 + k), a) < 0.02);
    const double b = sinr_macro_ul(k, s.drop.real, s.ul.beams, s.ul.powers.dual, s.scenario);
    CHECK(oracle::rel_err(oracle::empirical_macro_ul(k, s.drop.real, s.ul.beams, s.ul.powers.dual, n, 200 + k), b) < 0.02);
  }
  for (std::size_t f = 0; f < 25; f += 6) {
    if (p[f] == 0.0) continue;
    const double a = sinr_femto_ul(f, s.drop.real, s.dl.beams, p, s.scenario);
    CHECK(oracle::rel_err(oracle::empirical_femto_ul(f, s.drop.real, s.dl.beams, p, s.scenario, n, 300 + f), a) < 0.02);
    const double b = sinr_femto_dl(f, s.drop.real, s.ul.beams, s.ul.powers.dual, s.scenario);
    CHECK(oracle::rel_err(oracle::empirical_femto_dl(f, s.drop.real, s.ul.beams, s.ul.powers.dual, n, 400 + f), b) < 0.02);
  }
}

TEST_CASE("macro SINR falls as femto powers grow") {
  const Slots s = make_slots(67);
  std::vector<double> p = s.dl.powers.femto_primal;
  double last = sinr_macro_dl(0, s.drop.real, s.dl.beams, p, s.scenario);
  for (int step = 0; step < 5; ++step) {
    for (double& x : p) x = 2.0 * x + 0.1;
    const double next = sinr_macro_dl(0, s.drop.real, s.dl.beams, p, s.scenario);
    CHECK(next < last);
    last = next;
  }
}

TEST_CASE("evaluators check the beamformer role") {
  const Slots s = make_slots(68);
  const auto& p = s.dl.powers.femto_primal;
  CHECK_THROWS_AS((void)sinr_macro_dl(0, s.drop.real, s.ul.beams, p, s.scenario), std::invalid_argument);
  CHECK_THROWS_AS((void)sinr_femto_ul(0, s.drop.real, s.ul.beams, p, s.scenario), std::invalid_argument);
  CHECK_THROWS_AS((void)sinr_macro_ul(0, s.drop.real, s.dl.beams, s.ul.powers.dual, s.scenario),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)dual_network(s.drop.real, s.dl.beams), std::invalid_argument);
  CHECK_THROWS_AS((void)primal_network(s.drop.real, s.ul.beams), std::invalid_argument);
}

TEST_CASE("network bookkeeping") {
  InterferenceNetwork net(1, 2);
  CHECK(net.size() == 3);
  CHECK(net.femto_node(1) == 2);
  net.gain(0, 0) = 2.0;
  net.gain(0, 1) = 0.5;
  net.gain(0, 2) = 0.25;
  const std::vector<double> p{1.0, 2.0, 4.0};
  CHECK(net.sinr(0, p) == Approx(2.0 / 3.0));
  CHECK_THROWS_AS((void)net.sinrs(std::vector<double>{1.0}), DimensionError);
  const DualPowers q{{1.0, 2.0}, {3.0}};
  CHECK(q.total() == 6.0);
  CHECK(stack_powers(q.macro, q.femto) == std::vector<double>{1.0, 2.0, 3.0});
}

}  // TEST_SUITE
