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

#include "qwalk/phase_stats.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <numbers>

namespace qwalk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Angles closer than this are the same support point after wrapping.
constexpr double kMergeTolerance = 1e-12;

}  // namespace

PhaseDistribution PhaseDistribution::point_mass(double phi) {
  return {Kind::DiscreteSupport, {wrap_angle(phi)}, {1.0}};
}

PhaseDistribution PhaseDistribution::uniform_grid(int grid_size) {
  PhaseDistribution p;
  p.kind = Kind::GridSampled;
  p.angles.resize(grid_size);
  p.values.assign(grid_size, 1.0 / kTwoPi);
  for (int m = 0; m < grid_size; ++m) p.angles[m] = kTwoPi * m / grid_size;
  return p;
}

double PhaseDistribution::total() const {
  double s = 0.0;
  for (double v : values) s += v;
  if (kind == Kind::GridSampled && !values.empty()) s *= kTwoPi / static_cast<double>(values.size());
  return s;
}

Complex PhaseDistribution::first_moment() const {
  Complex mu = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) mu += values[i] * std::polar(1.0, angles[i]);
  if (kind == Kind::GridSampled && !values.empty()) mu *= kTwoPi / static_cast<double>(values.size());
  return mu;
}

PhaseDistribution make_discrete(const std::vector<std::pair<double, double>>& masses) {
  std::vector<std::pair<double, double>> wrapped;
  wrapped.reserve(masses.size());
  for (const auto& [phi, p] : masses) wrapped.emplace_back(wrap_angle(phi), p);
  std::sort(wrapped.begin(), wrapped.end());

  PhaseDistribution out;
  for (const auto& [phi, p] : wrapped) {
    if (!out.angles.empty() && phi - out.angles.back() < kMergeTolerance) {
      out.values.back() += p;
    } else {
      out.angles.push_back(phi);
      out.values.push_back(p);
    }
  }
  // 0 and 2pi - eps are the same point.
  if (out.angles.size() > 1 && kTwoPi - out.angles.back() < kMergeTolerance) {
    out.values.front() += out.values.back();
    out.angles.pop_back();
    out.values.pop_back();
  }
  return out;
}

PhaseDistribution marginal_distribution(const WalkLatticeState& state, int walker, double delta,
                                        double phi0) {
  if (walker < 0 || walker >= state.num_walkers) {
    throw Error(ErrorCode::InvalidArgument, "walker index out of range");
  }
  std::map<int, double> by_offset;
  for (const auto& [k, v] : state.amplitudes) by_offset[k[walker]] += v.squaredNorm();
  std::vector<std::pair<double, double>> masses;
  masses.reserve(by_offset.size());
  for (const auto& [k, p] : by_offset) masses.emplace_back(phi0 + k * delta, p);
  return make_discrete(masses);
}

std::optional<double> holevo_sigma(const PhaseDistribution& p) {
  const double r = std::abs(p.first_moment());
  if (r < kUnboundedMoment) return std::nullopt;
  // |mu| can exceed one by roundoff for a point mass.
  return std::sqrt(std::max(0.0, 1.0 / (r * r) - 1.0));
}

std::vector<PhaseDistribution> classical_walk_distribution(double delta, int steps,
                                                           int num_walkers, double phi0) {
  if (steps < 0) throw Error(ErrorCode::InvalidArgument, "steps must be non-negative");
  std::vector<std::pair<double, double>> masses;
  // log-space binomial weights stay finite for large N.
  for (int right = 0; right <= steps; ++right) {
    const int k = 2 * right - steps;
    const double logp = std::lgamma(steps + 1.0) - std::lgamma(right + 1.0) -
                        std::lgamma(steps - right + 1.0) - steps * std::log(2.0);
    masses.emplace_back(phi0 + k * delta, std::exp(logp));
  }
  return std::vector<PhaseDistribution>(num_walkers, make_discrete(masses));
}

double SigmaSeries::max_sigma() const {
  double m = 0.0;
  for (const auto& e : entries) {
    if (!e.sigma) return std::numeric_limits<double>::infinity();
    m = std::max(m, *e.sigma);
  }
  return m;
}

std::optional<double> SigmaSeries::at(int steps) const {
  for (const auto& e : entries) {
    if (e.steps == steps) return e.sigma;
  }
  return std::nullopt;
}

SigmaSeries sigma_series(const WalkConfig& config, const CoinSpec& spec, int walker, int n_max) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be at least 1");
  config.validate();
  const ComplexMatrix coin = coin_matrix(spec);
  WalkLatticeState s = initial_lattice_state(config.num_walkers, config.initial_coin);
  SigmaSeries out;
  for (int n = 1; n <= n_max; ++n) {
    s = walk_step(s, coin);
    out.entries.push_back(
        {n, holevo_sigma(marginal_distribution(s, walker, config.delta, config.phi0_of(walker)))});
  }
  return out;
}

SigmaSeries classical_sigma_series(double delta, int n_max) {
  SigmaSeries out;
  for (int n = 1; n <= n_max; ++n) {
    out.entries.push_back({n, holevo_sigma(classical_walk_distribution(delta, n, 1).front())});
  }
  return out;
}

ScalingFit scaling_exponent(const SigmaSeries& series, int n_min, int n_max) {
  ScalingFit fit;
  fit.n_min = n_min;
  fit.n_max = n_max;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& e : series.entries) {
    if (e.steps < n_min || e.steps > n_max) continue;
    if (!e.sigma) {
      ++fit.points_excluded;
      std::cerr << "warning: unbounded sigma at N=" << e.steps << " excluded from fit\n";
      continue;
    }
    if (!(*e.sigma > 0.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  "sigma must be positive for a log-log fit (N=" + std::to_string(e.steps) + ")");
    }
    xs.push_back(std::log(static_cast<double>(e.steps)));
    ys.push_back(std::log(*e.sigma));
  }
  fit.points_used = static_cast<int>(xs.size());
  if (xs.size() < 3) {
    throw Error(ErrorCode::InsufficientData, "fewer than 3 usable points in the fit window");
  }
  fit.regression = linear_regression(xs, ys);
  return fit;
}

LocalizationCheck check_localization(const SigmaSeries& series, int n_min, int n_max,
                                     int reference_step, double slope_limit) {
  LocalizationCheck c;
  const auto ref = series.at(reference_step);
  const double max_sigma = series.max_sigma();
  c.bounded = ref.has_value() && std::isfinite(max_sigma) && max_sigma <= 3.0 * *ref;
  c.zero_spread = std::all_of(series.entries.begin(), series.entries.end(),
                              [](const SigmaPoint& e) { return e.sigma && *e.sigma == 0.0; });
  if (c.zero_spread) {
    // A walker that never spreads has a constant spread: slope zero.
    c.slope = 0.0;
  } else {
    try {
      c.slope = scaling_exponent(series, n_min, n_max).regression.slope;
    } catch (const Error&) {
      c.slope.reset();
    }
  }
  c.localized = c.bounded && c.slope && std::abs(*c.slope) < slope_limit;
  return c;
}

}  // namespace qwalk
