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

#include "qwalk/numerics.hpp"

#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace qwalk {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::DegenerateAbscissa: return "DegenerateAbscissa";
    case ErrorCode::InvalidTheta: return "InvalidTheta";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroDetuning: return "ZeroDetuning";
    case ErrorCode::ZeroDriveDetuning: return "ZeroDriveDetuning";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::TruncationSuspect: return "TruncationSuspect";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

ComplexMatrix matexp_hermitian(const ComplexMatrix& h, double t) {
  if (h.rows() != h.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matexp_hermitian needs a square matrix");
  }
  if (hermiticity_residual(h) > kHermitianTolerance) {
    throw Error(ErrorCode::NotHermitian, "input deviates from its adjoint by more than 1e-10");
  }
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  const Eigen::VectorXd& evals = solver.eigenvalues();
  const ComplexMatrix& v = solver.eigenvectors();
  ComplexVector phases(evals.size());
  for (Eigen::Index i = 0; i < evals.size(); ++i) phases(i) = std::exp(-kI * evals(i) * t);
  return v * phases.asDiagonal() * v.adjoint();
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const int> dims,
                            std::span<const int> keep) {
  const int n_sub = static_cast<int>(dims.size());
  long total = 1;
  for (int d : dims) {
    if (d <= 0) throw Error(ErrorCode::DimensionMismatch, "subsystem dims must be positive");
    total *= d;
  }
  if (rho.rows() != total || rho.cols() != total) {
    throw Error(ErrorCode::DimensionMismatch, "product of dims does not match matrix size");
  }
  std::vector<bool> kept(n_sub, false);
  for (int k : keep) {
    if (k < 0 || k >= n_sub || kept[k]) {
      throw Error(ErrorCode::DimensionMismatch, "invalid subsystem index in keep set");
    }
    kept[k] = true;
  }

  // Strides of each subsystem in the composite index.
  std::vector<long> stride(n_sub, 1);
  for (int s = n_sub - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];

  std::vector<int> kept_subs;
  std::vector<int> traced_subs;
  for (int s = 0; s < n_sub; ++s) (kept[s] ? kept_subs : traced_subs).push_back(s);

  auto offsets_of = [&](const std::vector<int>& subs) {
    long count = 1;
    for (int s : subs) count *= dims[s];
    std::vector<long> offsets(count, 0);
    for (long idx = 0; idx < count; ++idx) {
      long rem = idx;
      long off = 0;
      for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
        off += (rem % dims[*it]) * stride[*it];
        rem /= dims[*it];
      }
      offsets[idx] = off;
    }
    return offsets;
  };
  const std::vector<long> kept_off = offsets_of(kept_subs);
  const std::vector<long> traced_off = offsets_of(traced_subs);

  const long dk = static_cast<long>(kept_off.size());
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (long j = 0; j < dk; ++j) {
    for (long i = 0; i < dk; ++i) {
      Complex acc = 0.0;
      for (long t : traced_off) acc += rho(kept_off[i] + t, kept_off[j] + t);
      out(i, j) = acc;
    }
  }
  return out;
}

RegressionResult linear_regression(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::DimensionMismatch, "xs and ys differ in length");
  }
  const std::size_t n = xs.size();
  if (n < 3) throw Error(ErrorCode::InsufficientData, "regression needs at least 3 points");

  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx <= 1e-300 * static_cast<double>(n)) {
    throw Error(ErrorCode::DegenerateAbscissa, "all abscissae are equal");
  }

  RegressionResult r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double res = ys[i] - (r.slope * xs[i] + r.intercept);
    ssr += res * res;
  }
  // Residuals at roundoff level count as exactly collinear.
  double max_abs_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    max_abs_res = std::max(max_abs_res, std::abs(ys[i] - (r.slope * xs[i] + r.intercept)));
  }
  if (max_abs_res < 1e-12) ssr = 0.0;

  r.slope_stderr = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
  r.r_squared = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
  return r;
}

}  // namespace qwalk
