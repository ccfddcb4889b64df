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

#pragma once

#include <optional>
#include <vector>

#include "qwalk/numerics.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

/// Probability distribution on the circle [0, 2pi).
///
/// DiscreteSupport holds point masses (angle, probability). GridSampled
/// holds densities on the uniform grid phi_m = 2 pi m / M, m = 0..M-1,
/// normalized so the periodic trapezoid integral is one.
struct PhaseDistribution {
  enum class Kind { DiscreteSupport, GridSampled };

  Kind kind = Kind::DiscreteSupport;
  std::vector<double> angles;
  std::vector<double> values;

  static PhaseDistribution point_mass(double phi);
  static PhaseDistribution uniform_grid(int grid_size);

  /// Sum of masses (discrete) or trapezoid integral (grid).
  double total() const;

  /// First circular moment, integral of P(phi) e^{i phi}.
  Complex first_moment() const;
};

/// Builds a DiscreteSupport distribution from raw (angle, probability)
/// pairs: angles are wrapped and coinciding angles are merged.
PhaseDistribution make_discrete(const std::vector<std::pair<double, double>>& masses);

/// Marginal of one walker: p(k) summed over the other walkers and all coin
/// strings, placed at phi0 + k*delta (mod 2pi).
PhaseDistribution marginal_distribution(const WalkLatticeState& state, int walker, double delta,
                                        double phi0 = 0.0);

/// Holevo standard deviation sqrt(|mu|^-2 - 1). Empty result means the
/// distribution is (near-)uniform, |mu| < 1e-12.
std::optional<double> holevo_sigma(const PhaseDistribution& p);

inline constexpr double kUnboundedMoment = 1e-12;

/// Binomial distribution of a fair-coin random walk after N steps, mapped to
/// phi0 + k*delta. Walkers are independent, so one distribution is returned
/// per walker.
std::vector<PhaseDistribution> classical_walk_distribution(double delta, int steps,
                                                           int num_walkers, double phi0 = 0.0);

struct SigmaPoint {
  int steps = 0;
  std::optional<double> sigma;  // empty: Unbounded
};

struct SigmaSeries {
  std::vector<SigmaPoint> entries;

  double max_sigma() const;
  std::optional<double> at(int steps) const;
};

/// sigma(N) of one walker for N = 1..n_max, by incremental stepping.
SigmaSeries sigma_series(const WalkConfig& config, const CoinSpec& spec, int walker, int n_max);

/// Classical binomial series for N = 1..n_max.
SigmaSeries classical_sigma_series(double delta, int n_max);

struct ScalingFit {
  RegressionResult regression;
  int n_min = 0;
  int n_max = 0;
  int points_used = 0;
  int points_excluded = 0;
};

/// OLS of ln sigma against ln N over n_min..n_max. Unbounded entries are
/// dropped with a warning on stderr. Throws InsufficientData with fewer than
/// three usable points and InvalidArgument for sigma <= 0.
ScalingFit scaling_exponent(const SigmaSeries& series, int n_min, int n_max);

/// Localization verdict for a series: bounded growth and negligible slope.
struct LocalizationCheck {
  bool bounded = false;        // max sigma <= 3 * sigma(reference_step)
  bool zero_spread = false;    // every sigma is exactly zero
  std::optional<double> slope; // empty when the series has no positive entries
  bool localized = false;
};

LocalizationCheck check_localization(const SigmaSeries& series, int n_min, int n_max,
                                     int reference_step = 5, double slope_limit = 0.15);

}  // namespace qwalk
