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

#include <string>
#include <utility>
#include <vector>

#include "qwalk/numerics.hpp"

namespace qwalk {

/// Cavity-QED device parameters. Frequencies and couplings are angular
/// frequencies quoted as omega / 2pi in MHz.
struct DeviceParams {
  double omega_a = 7000.0;
  double omega_c = 5000.0;
  double omega_d = 7000.0;
  double g = 100.0;
  double epsilon = 1000.0;

  double detuning() const { return omega_a - omega_c; }
  double drive_qubit_detuning() const { return omega_d - omega_a; }
  double drive_cavity_detuning() const { return omega_d - omega_c; }

  /// Dispersive-regime and positivity guards; throws InvalidArgument.
  void validate() const;
};

/// chi = g^2 / Delta. Throws ZeroDetuning.
double cavity_pull(const DeviceParams& p);

/// Omega_R = 2 g epsilon / delta_dc. Throws ZeroDriveDetuning.
double rabi_frequency(const DeviceParams& p);

/// Drive frequency that puts the ac-Stark-shifted qubit on resonance for
/// mean photon number n_bar: 2 n_bar g^2/Delta - 2 g epsilon/Delta + omega_a.
double drive_frequency(const DeviceParams& p, double n_bar);

/// exp(i dtheta n sigma_z) on one cavity-qubit pair, basis index 2n + q.
ComplexMatrix conditional_shift_unitary(double delta_theta, int d);

/// Global-phase-invariant distance 1 - |Tr(target^dagger achieved)| / dim.
double gate_infidelity(const ComplexMatrix& target, const ComplexMatrix& achieved);

struct GateReport {
  std::string name;
  ComplexMatrix target;
  ComplexMatrix achieved;
  double infidelity = 0.0;
  std::vector<Complex> residual_phases;
  std::vector<std::pair<std::string, std::string>> notes;

  void note(std::string key, std::string value) { notes.emplace_back(std::move(key), std::move(value)); }
  std::string to_text() const;
};

/// exp(i Omega_R t sigma_x / 2) on one qubit.
ComplexMatrix hadamard_pulse(double rabi, double duration);

GateReport hadamard_pulse_check(const DeviceParams& params, double n_bar);

/// Dipole-dipole flip-flop chi (s+ s- + s- s+) run for theta / chi.
/// `photons` sets n in the reported diagonal correction
/// exp[-i theta (n + 1/2) sum sigma_z].
GateReport iswap_synthesis_check(double theta, double photons = 0.0);

/// Sequential conditional phases realizing exp(-i pi n Upsilon / 2) with
/// the binary-ordered Upsilon = sum_k k |k><k|, checked on photon sectors
/// n = 0..d-1.
GateReport dft_synthesis_check(int d);

/// Grover construction exp(-i H0 t) exp(-i He t) with
/// Omega_R = (16m + 4) chi, compared with -G.
GateReport grover_synthesis_check(int m, double chi_t);

/// Largest state infidelity between full Jaynes-Cummings and dispersive
/// evolution of one cavity-qubit pair over `samples` times up to t_max.
double jc_dispersive_deviation(const DeviceParams& params, int d, double t_max, int samples = 16);

}  // namespace qwalk
