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

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qwalk/numerics.hpp"

using qwalk::ComplexMatrix;
using qwalk::kI;

namespace {

ComplexMatrix random_matrix(std::mt19937& rng, int r, int c) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(r, c);
  for (int j = 0; j < c; ++j)
    for (int i = 0; i < r; ++i) m(i, j) = {n(rng), n(rng)};
  return m;
}

ComplexMatrix random_hermitian(std::mt19937& rng, int d) {
  const ComplexMatrix a = random_matrix(rng, d, d);
  return 0.5 * (a + a.adjoint());
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("kron is associative and obeys the mixed product rule") {
  std::mt19937 rng(7);
  const auto a = random_matrix(rng, 2, 3), b = random_matrix(rng, 3, 2), c = random_matrix(rng, 2, 2);
  CHECK(max_abs(qwalk::kron(qwalk::kron(a, b), c) - qwalk::kron(a, qwalk::kron(b, c))) < 1e-12);

  const auto p = random_matrix(rng, 3, 2), q = random_matrix(rng, 2, 3);
  const ComplexMatrix lhs = qwalk::kron(a, b) * qwalk::kron(p, q);
  const ComplexMatrix rhs = qwalk::kron(ComplexMatrix(a * p), ComplexMatrix(b * q));
  CHECK(max_abs(lhs - rhs) < 1e-12);
}

TEST_CASE("kron entries follow the block layout") {
  ComplexMatrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 1, 1, 0;
  const ComplexMatrix k = qwalk::kron(a, b);
  CHECK(k.rows() == 4);
  CHECK(k(0, 1) == qwalk::Complex(1));
  CHECK(k(1, 2) == qwalk::Complex(2));
  CHECK(k(3, 2) == qwalk::Complex(4));
  CHECK(k(2, 2) == qwalk::Complex(0));
}

TEST_CASE("matexp_hermitian matches closed forms") {
  ComplexMatrix sz(2, 2);
  sz << 1, 0, 0, -1;
  const double t = 0.37;
  const ComplexMatrix u = qwalk::matexp_hermitian(sz, t);
  CHECK(std::abs(u(0, 0) - std::exp(-kI * t)) < 1e-14);
  CHECK(std::abs(u(1, 1) - std::exp(kI * t)) < 1e-14);

  ComplexMatrix sx(2, 2);
  sx << 0, 1, 1, 0;
  const ComplexMatrix v = qwalk::matexp_hermitian(sx, t);
  CHECK(std::abs(v(0, 0) - std::cos(t)) < 1e-14);
  CHECK(std::abs(v(0, 1) + kI * std::sin(t)) < 1e-14);

  const ComplexMatrix flip = qwalk::matexp_hermitian(sx, std::numbers::pi / 2.0);
  CHECK(max_abs(flip + kI * sx) < 1e-14);
}

TEST_CASE("matexp_hermitian is unitary and a one-parameter group") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix h = random_hermitian(rng, 6);
    const ComplexMatrix u1 = qwalk::matexp_hermitian(h, 0.3);
    const ComplexMatrix u2 = qwalk::matexp_hermitian(h, 0.5);
    const ComplexMatrix u12 = qwalk::matexp_hermitian(h, 0.8);
    CHECK(qwalk::unitarity_residual(u12) < 1e-12);
    CHECK(max_abs(u1 * u2 - u12) < 1e-12);
    CHECK(max_abs(qwalk::matexp_hermitian(h, -0.8) - u12.adjoint()) < 1e-12);
  }
}

TEST_CASE("matexp_hermitian rejects non-Hermitian input") {
  ComplexMatrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(qwalk::matexp_hermitian(m, 1.0), qwalk::Error);
  try {
    qwalk::matexp_hermitian(m, 1.0);
  } catch (const qwalk::Error& e) {
    CHECK(e.code() == qwalk::ErrorCode::NotHermitian);
  }
}

TEST_CASE("partial_trace of a product state recovers the factors") {
  std::mt19937 rng(3);
  ComplexMatrix a = random_hermitian(rng, 3);
  ComplexMatrix b = random_hermitian(rng, 2);
  a /= a.trace();
  b /= b.trace();
  const ComplexMatrix ab = qwalk::kron(a, b);
  const std::array<int, 2> dims{3, 2};
  const std::array<int, 1> keep0{0}, keep1{1};
  CHECK(max_abs(qwalk::partial_trace(ab, dims, keep0) - a) < 1e-12);
  CHECK(max_abs(qwalk::partial_trace(ab, dims, keep1) - b) < 1e-12);
}

TEST_CASE("partial_trace keeps the middle of three subsystems") {
  std::mt19937 rng(5);
  const ComplexMatrix a = random_hermitian(rng, 2), b = random_hermitian(rng, 3),
                      c = random_hermitian(rng, 2);
  const ComplexMatrix abc = qwalk::kron(qwalk::kron(a, b), c);
  const std::array<int, 3> dims{2, 3, 2};
  const std::array<int, 1> keep{1};
  const ComplexMatrix expect = a.trace() * c.trace() * b;
  CHECK(max_abs(qwalk::partial_trace(abc, dims, keep) - expect) < 1e-12);

  const std::array<int, 2> bad{2, 2};
  CHECK_THROWS_AS(qwalk::partial_trace(abc, bad, keep), qwalk::Error);
}

TEST_CASE("linear_regression on a hand-worked example") {
  const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 2, 5};
  const auto r = qwalk::linear_regression(x, y);
  CHECK(r.slope == doctest::Approx(1.1).epsilon(1e-12));
  CHECK(r.intercept == doctest::Approx(1.1).epsilon(1e-12));
  CHECK(r.slope_stderr == doctest::Approx(std::sqrt(0.27)).epsilon(1e-12));
  CHECK(r.r_squared == doctest::Approx(1.0 - 2.7 / 8.75).epsilon(1e-12));
}

TEST_CASE("linear_regression on an exact line has zero stderr") {
  const std::vector<double> x{1, 2, 3, 4, 5}, y{-1, 1, 3, 5, 7};
  const auto r = qwalk::linear_regression(x, y);
  CHECK(r.slope == doctest::Approx(2.0));
  CHECK(r.slope_stderr == 0.0);
  CHECK(r.r_squared == doctest::Approx(1.0));
}

TEST_CASE("linear_regression error paths") {
  const std::vector<double> two{1, 2}, flat{2, 2, 2}, y3{1, 2, 3};
  CHECK_THROWS_AS(qwalk::linear_regression(two, two), qwalk::Error);
  try {
    qwalk::linear_regression(flat, y3);
    FAIL("expected DegenerateAbscissa");
  } catch (const qwalk::Error& e) {
    CHECK(e.code() == qwalk::ErrorCode::DegenerateAbscissa);
  }
}
