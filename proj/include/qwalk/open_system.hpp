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

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "qwalk/numerics.hpp"
#include "qwalk/phase_stats.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

// Composite space ordering: (cavity 1, qubit 1, cavity 2, qubit 2). Qubit
// index 0 is coin |-1> (sigma_z = -1), index 1 is coin |+1> (sigma_z = +1).
// Time is measured in units of 1/chi; kappa and gamma in units of chi.

struct OpenSystemConfig {
  int fock_dim = 16;
  double chi = 1.0;
  double delta_theta = 0.8;
  std::array<double, 2> kappa{0.0, 0.0};
  std::array<double, 2> gamma{0.0, 0.0};
  CoinSpec coin = CoinSpec::dft();
  ComplexVector initial_coin = initial_coin_state("c3");
  std::array<double, 2> initial_phase{0.0, 0.0};
  int steps = 10;
  double dt = 0.01;
  // Dissipation-only interval before each (instantaneous) coin toss, in
  // units of 1/chi. Zero means the coin toss is noiseless.
  double coin_duration = 0.0;

  int dim() const { return 4 * fock_dim * fock_dim; }
  double step_time() const { return delta_theta / chi; }
  bool dissipative() const;
  void validate() const;
};

/// Hermitian, unit-trace state on the composite space.
struct DensityMatrix {
  int fock_dim = 0;
  ComplexMatrix m;

  Complex trace() const { return m.trace(); }
};

/// Index of the composite basis state |n1, q1, n2, q2>.
inline long composite_index(int d, int n1, int q1, int n2, int q2) {
  return ((static_cast<long>(n1) * 2 + q1) * d + n2) * 2 + q2;
}

/// Diagonal of H_int = chi * sum_j n_j sigma_z^j.
Eigen::VectorXd build_interaction_hamiltonian(const OpenSystemConfig& config);

/// Master-equation right-hand side in the lab frame:
/// -i[H_int, rho] + sum_j kappa_j D[a_j] rho + gamma_j/2 D[sigma_z^j] rho.
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const OpenSystemConfig& config);

/// Fixed-step RK4 over duration t. The stiff H_int phases are removed by
/// working in its interaction frame; the dissipators are integrated there.
/// Throws StepTooLarge if the trace drifts by more than 1e-6.
DensityMatrix evolve(const DensityMatrix& rho, const OpenSystemConfig& config, double t);

/// In-place version used by the walk driver.
void evolve_in_place(ComplexMatrix& rho, const OpenSystemConfig& config, double t);

/// Same as evolve() with the interaction Hamiltonian switched off.
void dissipate_in_place(ComplexMatrix& rho, const OpenSystemConfig& config, double t);

/// rho -> (I_cav x C) rho (I_cav x C)^dagger.
void apply_coin(ComplexMatrix& rho, const ComplexMatrix& coin, int fock_dim);
void apply_coin(ComplexVector& psi, const ComplexMatrix& coin, int fock_dim);

/// Phase states for both cavities tensored with the initial coin.
ComplexVector initial_state_vector(const OpenSystemConfig& config);

/// Density matrices after N = 0..steps walk steps.
std::vector<DensityMatrix> noisy_walk(const OpenSystemConfig& config);

using DensityObserver = std::function<void(int step, const ComplexMatrix& rho)>;
/// Streams each step's state to `observer` instead of storing the list.
void noisy_walk(const OpenSystemConfig& config, const DensityObserver& observer);

/// Noise-free pure-state walk in the same truncated space, N = 0..steps.
std::vector<ComplexVector> ideal_reference(const OpenSystemConfig& config);

/// <psi|rho|psi>, clipped to [0, 1] for roundoff.
double afd(const ComplexMatrix& rho, const ComplexVector& psi);

/// Reduced density matrix of cavity `walker` (0 or 1).
ComplexMatrix reduced_cavity(const ComplexMatrix& rho, int fock_dim, int walker);

/// Grid-sampled phase density (1/2pi) sum_{n,n'} e^{i(n'-n)phi} rho_{n n'}.
PhaseDistribution fock_phase_distribution(const ComplexMatrix& rho_cavity, int grid_size = 1024);

/// Closed form of the first circular moment, sum_n rho_{n+1, n}.
Complex fock_first_moment(const ComplexMatrix& rho_cavity);

/// Population of the two highest Fock levels of cavity `walker`.
double top_fock_population(const ComplexMatrix& rho, int fock_dim, int walker);

struct StateDiagnostics {
  double trace_error = 0.0;
  double hermiticity = 0.0;
  std::optional<double> min_eigenvalue;
  double top_fock_population = 0.0;  // max over both cavities
};

StateDiagnostics diagnose(const ComplexMatrix& rho, int fock_dim, bool with_eigenvalues);

struct OpenStepRecord {
  int step = 0;
  std::optional<double> sigma;  // walker 1, Holevo
  double afd = 1.0;
  StateDiagnostics diagnostics;
};

struct OpenWalkTrace {
  std::vector<OpenStepRecord> records;
  double initial_top_fock_population = 0.0;
  bool truncation_suspect = false;

  SigmaSeries sigma_series() const;  // N >= 1 only
};

struct TraceOptions {
  int grid_size = 1024;
  bool check_positivity = true;
  // Allowed growth of top-two Fock population over its initial value.
  double truncation_leak_tolerance = 1e-3;
};

/// Runs the noisy walk and its ideal reference side by side and records
/// sigma, AFD and state diagnostics after every step.
OpenWalkTrace trace_open_walk(const OpenSystemConfig& config, const TraceOptions& options = {});

}  // namespace qwalk
