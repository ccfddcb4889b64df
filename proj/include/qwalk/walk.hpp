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

#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "qwalk/numerics.hpp"

namespace qwalk {

// Coin basis: |-1> is index 0, |+1> is index 1. For several walkers the
// coin index is the bitstring with walker 1 as the most significant bit,
// so the two-walker basis reads (|-1,-1>, |-1,1>, |1,-1>, |1,1>).

enum class CoinKind { HadamardTensor, RootISwap, DFT, Grover, SingleHadamard };

struct CoinSpec {
  CoinKind kind = CoinKind::HadamardTensor;
  double theta = std::numbers::pi / 4.0;  // RootISwap only
  int num_walkers = 2;                    // HadamardTensor only

  static CoinSpec hadamard_tensor(int walkers = 2) { return {CoinKind::HadamardTensor, std::numbers::pi / 4.0, walkers}; }
  static CoinSpec root_iswap(double theta = std::numbers::pi / 4.0) { return {CoinKind::RootISwap, theta, 2}; }
  static CoinSpec dft() { return {CoinKind::DFT, std::numbers::pi / 4.0, 2}; }
  static CoinSpec grover() { return {CoinKind::Grover, std::numbers::pi / 4.0, 2}; }
  static CoinSpec single_hadamard() { return {CoinKind::SingleHadamard, std::numbers::pi / 4.0, 1}; }

  /// Number of walkers the coin acts on.
  int walkers() const;
};

std::string to_string(CoinKind kind);
CoinKind parse_coin_kind(const std::string& name);

/// Coin unitary of dimension 2^walkers. Throws InvalidTheta for RootISwap
/// with theta outside (0, pi/2].
ComplexMatrix coin_matrix(const CoinSpec& spec);

/// Bitstring index -> direction (+1/-1) of walker j.
inline int coin_direction(int coin_index, int walker, int num_walkers) {
  return ((coin_index >> (num_walkers - 1 - walker)) & 1) ? +1 : -1;
}

struct WalkConfig {
  int num_walkers = 2;
  double delta = 0.8;
  ComplexVector initial_coin;
  std::vector<double> phi0;  // empty means 0 for every walker
  int steps = 0;

  double phi0_of(int walker) const { return phi0.empty() ? 0.0 : phi0.at(walker); }
  void validate() const;
};

/// Initial coin states used for the two-walker experiments:
/// c1 = (|1>+|-1>)x(|1>+|-1>)/2, c2 = |1>x|1>, c3 = (|1>+i|-1>)x(|1>+i|-1>)/2.
ComplexVector initial_coin_state(const std::string& label);

using Offsets = std::vector<int>;

/// Sparse pure state on the abstract lattice: offsets -> coin amplitudes.
struct WalkLatticeState {
  int num_walkers = 1;
  int steps_taken = 0;
  std::map<Offsets, ComplexVector> amplitudes;

  double norm_squared() const;
  int coin_dim() const { return 1 << num_walkers; }
};

/// Amplitudes below this magnitude are dropped after each step.
inline constexpr double kAmplitudeFloor = 1e-15;

WalkLatticeState initial_lattice_state(int num_walkers, const ComplexVector& coin);

/// One step U = S (I x C): coin on every site, then each offset k_j moves by c_j.
WalkLatticeState walk_step(const WalkLatticeState& state, const ComplexMatrix& coin);
WalkLatticeState walk_step(const WalkLatticeState& state, const CoinSpec& spec);

WalkLatticeState walk_evolve(const WalkConfig& config, const CoinSpec& spec);

/// Truncated phase state e^{i phi n}/sqrt(d), n = 0..d-1.
struct PhaseStateVector {
  int dim = 0;
  double phi = 0.0;
  ComplexVector entries;
};

PhaseStateVector phase_state_vector(double phi, int d);

/// Wraps an angle into [0, 2pi).
double wrap_angle(double phi);

}  // namespace qwalk
