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
#include <random>

#include "qwalk/gate_synthesis.hpp"
#include "qwalk/walk.hpp"

using qwalk::Complex;
using qwalk::ComplexMatrix;
using qwalk::ComplexVector;
using qwalk::kI;

namespace {

constexpr double kPi = std::numbers::pi;

std::string note_of(const qwalk::GateReport& r, const std::string& key) {
  for (const auto& [k, v] : r.notes)
    if (k == key) return v;
  FAIL("missing note " << key);
  return {};
}

ComplexMatrix sx() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

}  // namespace

TEST_CASE("device calculators at the default parameters") {
  const qwalk::DeviceParams p;
  CHECK(qwalk::cavity_pull(p) == 5.0);
  CHECK(qwalk::rabi_frequency(p) == 100.0);
  auto q = p;
  q.epsilon = 0.0;
  CHECK(qwalk::rabi_frequency(q) == 0.0);
  q.epsilon = 2000.0;
  CHECK(qwalk::rabi_frequency(q) == 200.0);
  // 2 n g^2 / Delta - 2 g eps / Delta + omega_a
  CHECK(qwalk::drive_frequency(p, 3.0) == doctest::Approx(30.0 - 100.0 + 7000.0));
}

TEST_CASE("device calculators reject resonances") {
  qwalk::DeviceParams p;
  p.omega_c = p.omega_a;
  CHECK_THROWS_AS(qwalk::cavity_pull(p), qwalk::Error);
  CHECK_THROWS_AS(p.validate(), qwalk::Error);
  qwalk::DeviceParams q;
  q.omega_d = q.omega_c;
  CHECK_THROWS_AS(qwalk::rabi_frequency(q), qwalk::Error);
}

TEST_CASE("conditional shift moves phase states by delta theta") {
  const int d = 6;
  CHECK((qwalk::conditional_shift_unitary(0.0, d) - ComplexMatrix::Identity(2 * d, 2 * d)).norm() < 1e-15);

  const double phi = 0.4, dth = 0.8;
  const ComplexMatrix u = qwalk::conditional_shift_unitary(dth, d);
  ComplexVector in = ComplexVector::Zero(2 * d), expect = ComplexVector::Zero(2 * d);
  const auto a = qwalk::phase_state_vector(phi, d), b = qwalk::phase_state_vector(phi + dth, d);
  for (int n = 0; n < d; ++n) {
    in(2 * n + 1) = a.entries(n);
    expect(2 * n + 1) = b.entries(n);
  }
  CHECK((u * in - expect).norm() < 1e-14);

  const ComplexMatrix u1 = qwalk::conditional_shift_unitary(0.3, d), u2 = qwalk::conditional_shift_unitary(0.5, d);
  CHECK((u1 * u2 - u).norm() < 1e-14);
  ComplexMatrix un = ComplexMatrix::Identity(2 * d, 2 * d);
  for (int k = 0; k < 5; ++k) un = un * u;
  CHECK((un - qwalk::conditional_shift_unitary(5 * dth, d)).norm() < 1e-12);
}

TEST_CASE("gate infidelity ignores global phase") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
  const ComplexMatrix g = qwalk::coin_matrix(qwalk::CoinSpec::dft());
  for (int i = 0; i < 5; ++i) {
    CHECK(qwalk::gate_infidelity(g, std::polar(1.0, ph(rng)) * g) < 1e-14);
    CHECK(qwalk::gate_infidelity(std::polar(1.0, ph(rng)) * g, g) < 1e-14);
  }
  CHECK(qwalk::gate_infidelity(ComplexMatrix::Identity(2, 2), sx()) == doctest::Approx(1.0));
}

TEST_CASE("Hadamard pulse rotations") {
  const double rabi = 100.0, t_h = kPi / (2.0 * rabi);
  ComplexMatrix half(2, 2);
  half << 1, kI, kI, 1;
  half /= std::sqrt(2.0);
  CHECK(qwalk::gate_infidelity(half, qwalk::hadamard_pulse(rabi, t_h)) < 1e-12);
  CHECK(qwalk::gate_infidelity(kI * sx(), qwalk::hadamard_pulse(rabi, 2.0 * t_h)) < 1e-12);
  CHECK(qwalk::gate_infidelity(ComplexMatrix::Identity(2, 2), qwalk::hadamard_pulse(rabi, 0.0)) < 1e-15);

  const auto r = qwalk::hadamard_pulse_check(qwalk::DeviceParams{}, 1.0);
  CHECK(r.infidelity < 1e-10);
  CHECK(std::stod(note_of(r, "infidelity_vs_hadamard_tensor_in_frame")) < 1e-10);
  CHECK(qwalk::unitarity_residual(r.achieved) < 1e-10);
}

TEST_CASE("flip-flop synthesis of the root-SWAP block") {
  const auto r = qwalk::iswap_synthesis_check(kPi / 4.0, 0.0);
  CHECK(r.infidelity < 1e-12);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(r.achieved(1, 1) - s) < 1e-12);
  CHECK(std::abs(r.achieved(1, 2) + kI * s) < 1e-12);
  CHECK(std::abs(r.achieved(2, 1) + kI * s) < 1e-12);
  CHECK(std::abs(std::abs(r.achieved(0, 0)) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(r.achieved(3, 3)) - 1.0) < 1e-12);

  const auto tiny = qwalk::iswap_synthesis_check(1e-9, 0.0);
  CHECK(qwalk::gate_infidelity(ComplexMatrix::Identity(4, 4), tiny.achieved) < 1e-12);
  CHECK_THROWS_AS(qwalk::iswap_synthesis_check(2.0, 0.0), qwalk::Error);
}

TEST_CASE("iSWAP residual phases follow exp(-i theta (n + 1/2) sum sz)") {
  const double th = 0.6, n = 2.0;
  const auto r = qwalk::iswap_synthesis_check(th, n);
  REQUIRE(r.residual_phases.size() == 4);
  const double sums[4] = {-2, 0, 0, 2};
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(r.residual_phases[k] - std::exp(-kI * th * (n + 0.5) * sums[k])) < 1e-12);
  }
}

TEST_CASE("DFT synthesis phase pattern") {
  const auto r = qwalk::dft_synthesis_check(4);
  REQUIRE(r.residual_phases.size() == 4);
  const Complex expect[4] = {1.0, -kI, -1.0, kI};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(r.residual_phases[k] - expect[k]) < 1e-12);
  CHECK(std::stod(note_of(r, "sequential_vs_simultaneous_max_error")) < 1e-12);
  CHECK(note_of(r, "matches_conjugate_dft_rows") == "yes");
}

TEST_CASE("Grover synthesis") {
  const auto a = qwalk::grover_synthesis_check(0, kPi / 8.0);
  const auto b = qwalk::grover_synthesis_check(2, kPi / 8.0);
  CHECK(a.infidelity == doctest::Approx(b.infidelity).epsilon(1e-9));
  CHECK(std::stod(note_of(a, "he_minus_chi_sxsx_max_error")) < 1e-14);
  CHECK(std::stod(note_of(a, "infidelity_at_theta_star")) < 1e-10);
  const double theta_star = std::stod(note_of(a, "theta_star"));
  CHECK(theta_star > 0.0);
  CHECK(theta_star <= kPi / 2.0);
  CHECK(std::stod(note_of(a, "nominal_chi_t")) == doctest::Approx(kPi / 8.0));
}

TEST_CASE("dispersive coupling tracks Jaynes-Cummings dynamics") {
  qwalk::DeviceParams p;
  const double dev = qwalk::jc_dispersive_deviation(p, 4, 0.05, 8);
  MESSAGE("JC vs dispersive deviation " << dev);
  CHECK(dev < p.g / p.detuning());
}
