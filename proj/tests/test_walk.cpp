// Copyright 2026 The qwalk Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "qwalk/walk.hpp"

using qwalk::Complex;
using qwalk::ComplexMatrix;
using qwalk::ComplexVector;
using qwalk::kI;

namespace {

constexpr double kPi = std::numbers::pi;

// (position, final coin) -> amplitude, summing every coin history explicitly.
std::map<std::pair<int, int>, Complex> enumerate_paths(const ComplexVector& c0, int steps) {
  const double h = 1.0 / std::sqrt(2.0);
  const double had[2][2] = {{h, h}, {h, -h}};
  std::map<std::pair<int, int>, Complex> out;
  const int histories = 1 << steps;
  for (int start = 0; start < 2; ++start) {
    for (int hist = 0; hist < histories; ++hist) {
      Complex amp = c0(start);
      int prev = start, pos = 0;
      for (int k = 0; k < steps; ++k) {
        const int c = (hist >> k) & 1;
        amp *= had[c][prev];
        pos += c == 1 ? 1 : -1;
        prev = c;
      }
      out[{pos, prev}] += amp;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("three-step Hadamard walk equals path enumeration") {
  for (const ComplexVector c0 : {ComplexVector(ComplexVector::Unit(2, 0)),
                                 ComplexVector(ComplexVector::Unit(2, 1)),
                                 ComplexVector((ComplexVector(2) << kI, 1.0).finished() / std::sqrt(2.0))}) {
    qwalk::WalkConfig cfg;
    cfg.num_walkers = 1;
    cfg.initial_coin = c0;
    cfg.steps = 3;
    const auto state = qwalk::walk_evolve(cfg, qwalk::CoinSpec::single_hadamard());
    const auto oracle = enumerate_paths(c0, 3);
    double worst = 0.0;
    for (const auto& [key, amp] : oracle) {
      Complex got = 0.0;
      if (auto it = state.amplitudes.find({key.first}); it != state.amplitudes.end()) got = it->second(key.second);
      worst = std::max(worst, std::abs(got - amp));
    }
    CHECK(worst < 1e-12);
    CHECK(state.norm_squared() == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("independent walkers factorize under H x H") {
  const ComplexVector single = (ComplexVector(2) << kI, 1.0).finished() / std::sqrt(2.0);
  qwalk::WalkConfig one;
  one.num_walkers = 1;
  one.initial_coin = single;
  one.steps = 6;
  const auto a = qwalk::walk_evolve(one, qwalk::CoinSpec::single_hadamard());

  qwalk::WalkConfig two;
  two.num_walkers = 2;
  two.initial_coin = qwalk::initial_coin_state("c3");
  two.steps = 6;
  const auto b = qwalk::walk_evolve(two, qwalk::CoinSpec::hadamard_tensor(2));

  double worst = 0.0;
  for (const auto& [k1, v1] : a.amplitudes) {
    for (const auto& [k2, v2] : a.amplitudes) {
      const auto it = b.amplitudes.find({k1[0], k2[0]});
      REQUIRE(it != b.amplitudes.end());
      for (int c1 = 0; c1 < 2; ++c1)
        for (int c2 = 0; c2 < 2; ++c2)
          worst = std::max(worst, std::abs(it->second(2 * c1 + c2) - v1(c1) * v2(c2)));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("coin matrices have their closed forms") {
  const ComplexMatrix g = qwalk::coin_matrix(qwalk::CoinSpec::grover());
  CHECK((g - (ComplexMatrix::Constant(4, 4, 0.5) - ComplexMatrix::Identity(4, 4))).norm() < 1e-15);

  const ComplexMatrix f = qwalk::coin_matrix(qwalk::CoinSpec::dft());
  CHECK(std::abs(f(1, 1) - 0.5 * kI) < 1e-15);
  CHECK(std::abs(f(2, 3) + 0.5) < 1e-15);           // i^6 = -1
  CHECK(std::abs(f(3, 3) - 0.5 * kI) < 1e-15);      // i^9 = i

  const double th = 0.3;
  const ComplexMatrix s = qwalk::coin_matrix(qwalk::CoinSpec::root_iswap(th));
  CHECK(std::abs(s(1, 2) - kI * std::sin(th)) < 1e-15);
  CHECK(std::abs(s(2, 2) - std::cos(th)) < 1e-15);
  CHECK(std::abs(s(0, 0) - 1.0) < 1e-15);

  for (const auto& spec : {qwalk::CoinSpec::hadamard_tensor(2), qwalk::CoinSpec::root_iswap(),
                           qwalk::CoinSpec::dft(), qwalk::CoinSpec::grover(),
                           qwalk::CoinSpec::hadamard_tensor(3)}) {
    CHECK(qwalk::unitarity_residual(qwalk::coin_matrix(spec)) < 1e-14);
  }
}

TEST_CASE("root iSWAP rejects theta outside (0, pi/2]") {
  CHECK_THROWS_AS(qwalk::coin_matrix(qwalk::CoinSpec::root_iswap(0.0)), qwalk::Error);
  CHECK_THROWS_AS(qwalk::coin_matrix(qwalk::CoinSpec::root_iswap(2.0)), qwalk::Error);
  CHECK_NOTHROW(qwalk::coin_matrix(qwalk::CoinSpec::root_iswap(kPi / 2.0)));
}

TEST_CASE("coin index to direction") {
  CHECK(qwalk::coin_direction(0, 0, 2) == -1);
  CHECK(qwalk::coin_direction(2, 0, 2) == +1);
  CHECK(qwalk::coin_direction(2, 1, 2) == -1);
  CHECK(qwalk::coin_direction(1, 1, 2) == +1);
}

TEST_CASE("initial coin states") {
  const ComplexVector c2 = qwalk::initial_coin_state("c2");
  CHECK(std::abs(c2(3) - 1.0) < 1e-15);
  const ComplexVector c3 = qwalk::initial_coin_state("c3");
  CHECK(std::abs(c3(0) + 0.5) < 1e-15);  // (i/sqrt2)^2
  CHECK(std::abs(c3(3) - 0.5) < 1e-15);
  CHECK_THROWS_AS(qwalk::initial_coin_state("c4"), qwalk::Error);
}

TEST_CASE("walk preserves norm and prunes cancelled sites") {
  qwalk::WalkConfig cfg;
  cfg.initial_coin = qwalk::initial_coin_state("c1");
  cfg.steps = 12;
  for (const auto& spec : {qwalk::CoinSpec::dft(), qwalk::CoinSpec::grover(), qwalk::CoinSpec::root_iswap()}) {
    const auto s = qwalk::walk_evolve(cfg, spec);
    CHECK(s.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.steps_taken == 12);
    for (const auto& [k, v] : s.amplitudes) CHECK(v.cwiseAbs().maxCoeff() >= qwalk::kAmplitudeFloor);
  }
}

TEST_CASE("walk config validation") {
  qwalk::WalkConfig cfg;
  cfg.initial_coin = ComplexVector::Ones(4);
  CHECK_THROWS_AS(cfg.validate(), qwalk::Error);
  cfg.initial_coin = qwalk::initial_coin_state("c1");
  cfg.delta = 0.0;
  CHECK_THROWS_AS(cfg.validate(), qwalk::Error);
}

TEST_CASE("phase states are normalized and orthogonal on the grid") {
  const int d = 8;
  const auto a = qwalk::phase_state_vector(0.0, d);
  const auto b = qwalk::phase_state_vector(2.0 * kPi / d, d);
  CHECK(a.entries.norm() == doctest::Approx(1.0));
  CHECK(std::abs(a.entries.dot(b.entries)) < 1e-14);
  CHECK_THROWS_AS(qwalk::phase_state_vector(0.0, 1), qwalk::Error);
}

TEST_CASE("wrap_angle lands in [0, 2 pi)") {
  CHECK(qwalk::wrap_angle(-0.5) == doctest::Approx(2.0 * kPi - 0.5));
  CHECK(qwalk::wrap_angle(2.0 * kPi) == doctest::Approx(0.0));
  CHECK(qwalk::wrap_angle(7.0) == doctest::Approx(7.0 - 2.0 * kPi));
}
