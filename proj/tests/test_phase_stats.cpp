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
#include <numbers>

#include "qwalk/phase_stats.hpp"

using qwalk::PhaseDistribution;
using qwalk::SigmaSeries;

namespace {

constexpr double kPi = std::numbers::pi;

SigmaSeries power_law(double a, double p, int n_max) {
  SigmaSeries s;
  for (int n = 1; n <= n_max; ++n) s.entries.push_back({n, a * std::pow(n, p)});
  return s;
}

}  // namespace

TEST_CASE("point mass has zero spread") {
  const auto s = qwalk::holevo_sigma(PhaseDistribution::point_mass(1.3));
  REQUIRE(s.has_value());
  CHECK(*s == doctest::Approx(0.0));
}

TEST_CASE("uniform distributions are unbounded") {
  CHECK_FALSE(qwalk::holevo_sigma(PhaseDistribution::uniform_grid(64)).has_value());
  std::vector<std::pair<double, double>> eight;
  for (int k = 0; k < 8; ++k) eight.push_back({2.0 * kPi * k / 8.0, 1.0 / 8.0});
  CHECK_FALSE(qwalk::holevo_sigma(qwalk::make_discrete(eight)).has_value());
}

TEST_CASE("symmetric two-point distribution gives tan(delta)") {
  const auto p = qwalk::make_discrete({{-0.8, 0.5}, {0.8, 0.5}});
  const auto s = qwalk::holevo_sigma(p);
  REQUIRE(s.has_value());
  CHECK(*s == doctest::Approx(1.02963855705).epsilon(1e-10));
  CHECK(*s == doctest::Approx(std::tan(0.8)).epsilon(1e-12));
}

TEST_CASE("make_discrete wraps and merges coinciding angles") {
  const auto p = qwalk::make_discrete({{0.0, 0.25}, {2.0 * kPi, 0.25}, {-kPi / 2.0, 0.5}});
  REQUIRE(p.angles.size() == 2);
  CHECK(p.angles[0] == doctest::Approx(0.0));
  CHECK(p.values[0] == doctest::Approx(0.5));
  CHECK(p.angles[1] == doctest::Approx(1.5 * kPi));
  CHECK(p.total() == doctest::Approx(1.0));
}

TEST_CASE("grid-sampled moment uses the trapezoid rule") {
  PhaseDistribution p;
  p.kind = PhaseDistribution::Kind::GridSampled;
  const int m = 256;
  for (int k = 0; k < m; ++k) {
    const double phi = 2.0 * kPi * k / m;
    p.angles.push_back(phi);
    p.values.push_back((1.0 + std::cos(phi)) / (2.0 * kPi));
  }
  CHECK(p.total() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(p.first_moment() - qwalk::Complex(0.5, 0.0)) < 1e-12);
  CHECK(*qwalk::holevo_sigma(p) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("classical series matches the binomial closed form") {
  for (double delta : {0.1, 0.8}) {
    const auto series = qwalk::classical_sigma_series(delta, 12);
    for (const auto& e : series.entries) {
      const double expect = std::sqrt(std::pow(std::cos(delta), -2.0 * e.steps) - 1.0);
      REQUIRE(e.sigma.has_value());
      CHECK(*e.sigma == doctest::Approx(expect).epsilon(1e-10));
    }
  }
  const auto dists = qwalk::classical_walk_distribution(0.3, 5, 2);
  CHECK(dists.size() == 2);
  CHECK(dists[0].total() == doctest::Approx(1.0));
}

TEST_CASE("marginal of a product walk equals the single-walker distribution") {
  qwalk::WalkConfig two;
  two.initial_coin = qwalk::initial_coin_state("c1");
  two.steps = 5;
  const auto s2 = qwalk::walk_evolve(two, qwalk::CoinSpec::hadamard_tensor(2));

  qwalk::WalkConfig one;
  one.num_walkers = 1;
  one.initial_coin = qwalk::ComplexVector::Constant(2, 1.0 / std::sqrt(2.0));
  one.steps = 5;
  const auto s1 = qwalk::walk_evolve(one, qwalk::CoinSpec::single_hadamard());

  const auto a = qwalk::marginal_distribution(s2, 1, 0.8);
  const auto b = qwalk::marginal_distribution(s1, 0, 0.8);
  REQUIRE(a.angles.size() == b.angles.size());
  for (std::size_t i = 0; i < a.angles.size(); ++i) {
    CHECK(a.angles[i] == doctest::Approx(b.angles[i]));
    CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-12));
  }
  CHECK_THROWS_AS(qwalk::marginal_distribution(s2, 2, 0.8), qwalk::Error);
}

TEST_CASE("scaling_exponent recovers a power law") {
  const auto fit = qwalk::scaling_exponent(power_law(0.3, 0.7, 25), 4, 25);
  CHECK(fit.regression.slope == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(fit.regression.slope_stderr < 1e-12);
  CHECK(fit.points_used == 22);
}

TEST_CASE("scaling_exponent drops unbounded entries and guards its inputs") {
  auto s = power_law(1.0, 0.5, 10);
  s.entries[6].sigma.reset();
  const auto fit = qwalk::scaling_exponent(s, 2, 10);
  CHECK(fit.points_excluded == 1);
  CHECK(fit.regression.slope == doctest::Approx(0.5));
  CHECK_THROWS_AS(qwalk::scaling_exponent(s, 2, 3), qwalk::Error);
  s.entries[3].sigma = 0.0;
  CHECK_THROWS_AS(qwalk::scaling_exponent(s, 2, 10), qwalk::Error);
}

TEST_CASE("localization verdicts") {
  SigmaSeries zero;
  for (int n = 1; n <= 25; ++n) zero.entries.push_back({n, 0.0});
  const auto z = qwalk::check_localization(zero, 4, 25);
  CHECK(z.zero_spread);
  CHECK(z.localized);

  const auto grow = qwalk::check_localization(power_law(0.1, 1.0, 25), 4, 25);
  CHECK_FALSE(grow.bounded);
  CHECK_FALSE(grow.localized);

  const auto flat = qwalk::check_localization(power_law(0.5, 0.02, 25), 4, 25);
  CHECK(flat.bounded);
  CHECK(flat.localized);
}

TEST_CASE("sigma_series steps incrementally and matches direct evolution") {
  qwalk::WalkConfig cfg;
  cfg.initial_coin = qwalk::initial_coin_state("c3");
  const auto series = qwalk::sigma_series(cfg, qwalk::CoinSpec::dft(), 0, 8);
  REQUIRE(series.entries.size() == 8);
  cfg.steps = 8;
  const auto direct = qwalk::holevo_sigma(
      qwalk::marginal_distribution(qwalk::walk_evolve(cfg, qwalk::CoinSpec::dft()), 0, 0.8));
  CHECK(*series.at(8) == doctest::Approx(*direct).epsilon(1e-12));
}
