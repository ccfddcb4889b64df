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

#include "qwalk/walk.hpp"

#include <cmath>

namespace qwalk {

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

}  // namespace

int CoinSpec::walkers() const {
  switch (kind) {
    case CoinKind::SingleHadamard: return 1;
    case CoinKind::HadamardTensor: return num_walkers;
    default: return 2;
  }
}

std::string to_string(CoinKind kind) {
  switch (kind) {
    case CoinKind::HadamardTensor: return "hadamard";
    case CoinKind::RootISwap: return "iswap";
    case CoinKind::DFT: return "dft";
    case CoinKind::Grover: return "grover";
    case CoinKind::SingleHadamard: return "single-hadamard";
  }
  return "?";
}

CoinKind parse_coin_kind(const std::string& name) {
  if (name == "hadamard" || name == "hh" || name == "H") return CoinKind::HadamardTensor;
  if (name == "iswap" || name == "sqrt-iswap" || name == "root-iswap") return CoinKind::RootISwap;
  if (name == "dft" || name == "D") return CoinKind::DFT;
  if (name == "grover" || name == "G") return CoinKind::Grover;
  if (name == "single-hadamard") return CoinKind::SingleHadamard;
  throw Error(ErrorCode::ConfigError, "unknown coin '" + name + "'");
}

ComplexMatrix coin_matrix(const CoinSpec& spec) {
  switch (spec.kind) {
    case CoinKind::SingleHadamard:
      return hadamard();
    case CoinKind::HadamardTensor: {
      if (spec.num_walkers < 1) throw Error(ErrorCode::InvalidArgument, "need at least one walker");
      ComplexMatrix c = hadamard();
      for (int w = 1; w < spec.num_walkers; ++w) c = kron(c, hadamard());
      return c;
    }
    case CoinKind::RootISwap: {
      if (!(spec.theta > 0.0 && spec.theta <= kPi / 2.0)) {
        throw Error(ErrorCode::InvalidTheta, "theta must lie in (0, pi/2]");
      }
      ComplexMatrix c = ComplexMatrix::Identity(4, 4);
      c(1, 1) = c(2, 2) = std::cos(spec.theta);
      c(1, 2) = c(2, 1) = kI * std::sin(spec.theta);
      return c;
    }
    case CoinKind::DFT: {
      ComplexMatrix c(4, 4);
      for (int r = 0; r < 4; ++r) {
        for (int col = 0; col < 4; ++col) c(r, col) = 0.5 * std::pow(kI, r * col);
      }
      return c;
    }
    case CoinKind::Grover: {
      ComplexMatrix c = ComplexMatrix::Constant(4, 4, 0.5);
      c.diagonal().setConstant(-0.5);
      return c;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unhandled coin kind");
}

void WalkConfig::validate() const {
  if (num_walkers < 1) throw Error(ErrorCode::InvalidArgument, "num_walkers must be positive");
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  if (steps < 0) throw Error(ErrorCode::InvalidArgument, "steps must be non-negative");
  if (initial_coin.size() != (1 << num_walkers)) {
    throw Error(ErrorCode::DimensionMismatch, "initial coin must have dimension 2^num_walkers");
  }
  if (std::abs(initial_coin.squaredNorm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "initial coin is not normalized");
  }
  if (!phi0.empty() && static_cast<int>(phi0.size()) != num_walkers) {
    throw Error(ErrorCode::DimensionMismatch, "phi0 needs one entry per walker");
  }
}

ComplexVector initial_coin_state(const std::string& label) {
  Eigen::Vector2cd single;
  if (label == "c1") {
    single << 1.0, 1.0;
  } else if (label == "c2") {
    single << 0.0, 1.0;
  } else if (label == "c3") {
    single << kI, 1.0;  // (|1> + i|-1>), |-1> is index 0
  } else {
    throw Error(ErrorCode::ConfigError, "unknown initial coin label '" + label + "'");
  }
  single.normalize();
  return kron(single, single);
}

double WalkLatticeState::norm_squared() const {
  double n = 0.0;
  for (const auto& [k, v] : amplitudes) n += v.squaredNorm();
  return n;
}

WalkLatticeState initial_lattice_state(int num_walkers, const ComplexVector& coin) {
  if (coin.size() != (1 << num_walkers)) {
    throw Error(ErrorCode::DimensionMismatch, "coin vector does not match walker count");
  }
  WalkLatticeState s;
  s.num_walkers = num_walkers;
  s.amplitudes.emplace(Offsets(num_walkers, 0), coin);
  return s;
}

WalkLatticeState walk_step(const WalkLatticeState& state, const ComplexMatrix& coin) {
  const int w = state.num_walkers;
  const int dim = state.coin_dim();
  if (coin.rows() != dim || coin.cols() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "coin dimension does not match the state");
  }
  WalkLatticeState next;
  next.num_walkers = w;
  next.steps_taken = state.steps_taken + 1;
  for (const auto& [k, v] : state.amplitudes) {
    const ComplexVector flipped = coin * v;
    for (int c = 0; c < dim; ++c) {
      if (std::abs(flipped(c)) < kAmplitudeFloor) continue;
      Offsets moved = k;
      for (int j = 0; j < w; ++j) moved[j] += coin_direction(c, j, w);
      auto [it, inserted] = next.amplitudes.try_emplace(std::move(moved), ComplexVector::Zero(dim));
      it->second(c) += flipped(c);
    }
  }
  // Interference can cancel whole sites.
  std::erase_if(next.amplitudes, [](const auto& kv) {
    return kv.second.cwiseAbs().maxCoeff() < kAmplitudeFloor;
  });
  return next;
}

WalkLatticeState walk_step(const WalkLatticeState& state, const CoinSpec& spec) {
  return walk_step(state, coin_matrix(spec));
}

WalkLatticeState walk_evolve(const WalkConfig& config, const CoinSpec& spec) {
  config.validate();
  if (spec.walkers() != config.num_walkers) {
    throw Error(ErrorCode::DimensionMismatch, "coin acts on a different number of walkers");
  }
  const ComplexMatrix coin = coin_matrix(spec);
  WalkLatticeState s = initial_lattice_state(config.num_walkers, config.initial_coin);
  for (int n = 0; n < config.steps; ++n) s = walk_step(s, coin);
  return s;
}

PhaseStateVector phase_state_vector(double phi, int d) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "phase state needs d >= 2");
  PhaseStateVector p{d, phi, ComplexVector(d)};
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int n = 0; n < d; ++n) p.entries(n) = norm * std::exp(kI * (phi * n));
  return p;
}

double wrap_angle(double phi) {
  double w = std::fmod(phi, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  if (w >= 2.0 * kPi) w = 0.0;
  return w;
}

}  // namespace qwalk
