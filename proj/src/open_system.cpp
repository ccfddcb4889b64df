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

#include "qwalk/open_system.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace qwalk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Per-index quantum numbers of the composite basis.
struct Layout {
  int d = 0;
  long dim = 0;
  long stride1 = 0;  // n1 -> n1 + 1
  long stride2 = 2;  // n2 -> n2 + 1
  std::vector<int> n1, q1, n2, q2;

  explicit Layout(int fock_dim)
      : d(fock_dim), dim(4L * fock_dim * fock_dim), stride1(4L * fock_dim) {
    n1.resize(dim);
    q1.resize(dim);
    n2.resize(dim);
    q2.resize(dim);
    for (long x = 0; x < dim; ++x) {
      n1[x] = static_cast<int>(x / (4L * d));
      q1[x] = static_cast<int>((x / (2L * d)) % 2);
      n2[x] = static_cast<int>((x / 2) % d);
      q2[x] = static_cast<int>(x % 2);
    }
  }
};

struct Rates {
  std::array<double, 2> kappa{};
  std::array<double, 2> gamma{};
};

Rates absolute_rates(const OpenSystemConfig& c) {
  return {{c.kappa[0] * c.chi, c.kappa[1] * c.chi}, {c.gamma[0] * c.chi, c.gamma[1] * c.chi}};
}

// Column-independent pieces of the dissipator, built once per integration.
struct Kernel {
  long dim = 0;
  long stride1 = 0;
  long stride2 = 2;
  std::array<double, 2> kappa{};
  std::vector<int> q1, q2;
  Eigen::ArrayXd half_decay, a1, a2;
  std::array<Eigen::ArrayXd, 4> base;  // indexed by 2 q1_y + q2_y
  std::array<Eigen::ArrayXcd, 2> jump1, jump2;  // indexed by q_y

  Kernel(const Layout& L, const Rates& r)
      : dim(L.dim), stride1(L.stride1), stride2(L.stride2), kappa(r.kappa), q1(L.q1), q2(L.q2) {
    half_decay.resize(dim);
    a1.resize(dim);
    a2.resize(dim);
    for (long x = 0; x < dim; ++x) {
      half_decay(x) = 0.5 * (r.kappa[0] * L.n1[x] + r.kappa[1] * L.n2[x]);
      a1(x) = L.n1[x] < L.d - 1 ? std::sqrt(L.n1[x] + 1.0) : 0.0;
      a2(x) = L.n2[x] < L.d - 1 ? std::sqrt(L.n2[x] + 1.0) : 0.0;
    }
    for (int qy = 0; qy < 4; ++qy) {
      base[qy] = half_decay;
      for (long x = 0; x < dim; ++x) {
        if (L.q1[x] != qy / 2) base[qy](x) += r.gamma[0];
        if (L.q2[x] != qy % 2) base[qy](x) += r.gamma[1];
      }
    }
    for (int qy = 0; qy < 2; ++qy) {
      jump1[qy].resize(dim);
      jump2[qy].resize(dim);
    }
    set_frame(0.0);
  }

  // Jump terms pick up exp(-i chi (s_x - s_y) t), s_x - s_y = 2 (q_x - q_y).
  void set_frame(double chi_t) {
    const std::array<Complex, 3> phase{std::exp(2.0 * kI * chi_t), Complex(1.0),
                                       std::exp(-2.0 * kI * chi_t)};
    for (int qy = 0; qy < 2; ++qy) {
      for (long x = 0; x < dim; ++x) {
        jump1[qy](x) = kappa[0] * a1(x) * phase[q1[x] - qy + 1];
        jump2[qy](x) = kappa[1] * a2(x) * phase[q2[x] - qy + 1];
      }
    }
  }

  // Column y of sum_j kappa_j D[a_j] in + gamma_j/2 D[sz_j] in, into k.
  // Reads only columns y, y + stride2 and y + stride1 of `in`.
  void column(const ComplexMatrix& in, long y, Complex* k) const {
    const Complex* c0 = in.data() + y * dim;
    const double* b = base[2 * q1[y] + q2[y]].data();
    const double hy = half_decay(y);
    for (long x = 0; x < dim; ++x) k[x] = -(b[x] + hy) * c0[x];
    if (a1(y) != 0.0) add_jump(k, jump1[q1[y]].data(), a1(y), in.data() + (y + stride1) * dim + stride1,
                               dim - stride1);
    if (a2(y) != 0.0) add_jump(k, jump2[q2[y]].data(), a2(y), in.data() + (y + stride2) * dim + stride2,
                               dim - stride2);
  }

  void apply(const ComplexMatrix& in, ComplexMatrix& out) const {
    out.resize(dim, dim);
    for (long y = 0; y < dim; ++y) column(in, y, out.data() + y * dim);
  }

 private:
  // Written out by hand: std::complex multiplication goes through the
  // NaN-aware library routine and does not vectorize.
  static void add_jump(Complex* k, const Complex* coef, double ay, const Complex* src, long n) {
    for (long x = 0; x < n; ++x) {
      const double cr = coef[x].real() * ay, ci = coef[x].imag() * ay;
      const double sr = src[x].real(), si = src[x].imag();
      k[x] += Complex(cr * sr - ci * si, cr * si + ci * sr);
    }
  }
};

void symmetrize(ComplexMatrix& m) {
  const long n = m.rows();
  for (long j = 0; j < n; ++j) {
    m(j, j) = m(j, j).real();
    for (long i = j + 1; i < n; ++i) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = avg;
      m(j, i) = std::conj(avg);
    }
  }
}

// rho_xy *= exp(-i (E_x - E_y) t).
void rotate_frame(ComplexMatrix& rho, const Eigen::VectorXd& energies, double t) {
  ComplexVector u(energies.size());
  for (Eigen::Index i = 0; i < energies.size(); ++i) u(i) = std::exp(-kI * (energies(i) * t));
  for (long y = 0; y < rho.cols(); ++y) {
    const Complex uy = std::conj(u(y));
    for (long x = 0; x < rho.rows(); ++x) rho(x, y) *= u(x) * uy;
  }
}

// RK4 of the dissipators in the H_int interaction frame over [0, t]. The
// frame Hamiltonian chi * sum n sz has unit frequency chi in the jump
// phases; frame_chi = 0 integrates the bare dissipators.
void integrate_dissipators(ComplexMatrix& rho, const Layout& L, const Rates& rates,
                           double frame_chi, double t, double dt) {
  const long steps = std::max<long>(1, static_cast<long>(std::ceil(t / dt - 1e-9)));
  const double h = t / static_cast<double>(steps);
  const long dim = L.dim;
  Kernel kernel(L, rates);
  ComplexMatrix acc(dim, dim), tmp(dim, dim);
  ComplexVector k(dim);
  // One RK4 stage fused into a single sweep: acc += wa k, tmp = rho + wt k.
  // tmp may be updated in place since column y only reads columns >= y.
  auto stage = [&](const ComplexMatrix& in, double wa, double wt, bool first, bool last) {
    for (long y = 0; y < dim; ++y) {
      kernel.column(in, y, k.data());
      if (first) acc.col(y) = rho.col(y) + wa * k;
      else acc.col(y) += wa * k;
      if (!last) tmp.col(y) = rho.col(y) + wt * k;
    }
  };
  double time = 0.0;
  for (long s = 0; s < steps; ++s) {
    kernel.set_frame(frame_chi * time);
    stage(rho, h / 6.0, h / 2.0, true, false);
    kernel.set_frame(frame_chi * (time + h / 2.0));
    stage(tmp, h / 3.0, h / 2.0, false, false);
    stage(tmp, h / 3.0, h, false, false);
    kernel.set_frame(frame_chi * (time + h));
    stage(tmp, h / 6.0, 0.0, false, true);
    rho.swap(acc);
    time += h;
  }
  symmetrize(rho);
}

void check_trace(const Complex before, const ComplexMatrix& rho) {
  const double drift = std::abs(rho.trace() - before);
  if (drift > 1e-6) {
    throw Error(ErrorCode::StepTooLarge,
                "trace drifted by " + std::to_string(drift) + "; reduce dt");
  }
}

void apply_coin_left(ComplexMatrix& m, const ComplexMatrix& coin, int d) {
  const long cols = m.cols();
  for (long y = 0; y < cols; ++y) {
    for (int n1 = 0; n1 < d; ++n1) {
      for (int n2 = 0; n2 < d; ++n2) {
        const std::array<long, 4> idx{composite_index(d, n1, 0, n2, 0), composite_index(d, n1, 0, n2, 1),
                                      composite_index(d, n1, 1, n2, 0), composite_index(d, n1, 1, n2, 1)};
        std::array<Complex, 4> v{};
        for (int c = 0; c < 4; ++c) v[c] = m(idx[c], y);
        for (int c = 0; c < 4; ++c) {
          Complex acc = 0.0;
          for (int cp = 0; cp < 4; ++cp) acc += coin(c, cp) * v[cp];
          m(idx[c], y) = acc;
        }
      }
    }
  }
}

}  // namespace

bool OpenSystemConfig::dissipative() const {
  return kappa[0] > 0.0 || kappa[1] > 0.0 || gamma[0] > 0.0 || gamma[1] > 0.0;
}

void OpenSystemConfig::validate() const {
  if (fock_dim < 4) throw Error(ErrorCode::InvalidArgument, "fock_dim must be at least 4");
  if (!(chi > 0.0)) throw Error(ErrorCode::InvalidArgument, "chi must be positive");
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  if (steps < 0) throw Error(ErrorCode::InvalidArgument, "steps must be non-negative");
  if (coin_duration < 0.0) throw Error(ErrorCode::InvalidArgument, "coin_duration must be >= 0");
  if (coin.walkers() != 2) throw Error(ErrorCode::InvalidArgument, "open system needs a two-walker coin");
  if (initial_coin.size() != 4 || std::abs(initial_coin.squaredNorm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "initial coin must be a normalized 4-vector");
  }
  for (double rate : {kappa[0], kappa[1], gamma[0], gamma[1]}) {
    if (rate < 0.0) throw Error(ErrorCode::InvalidArgument, "decay rates must be non-negative");
    if (rate > 1.0) {
      throw Error(ErrorCode::InvalidArgument, "rates above chi leave the dispersive regime");
    }
  }
  static std::atomic<bool> warned{false};
  if (std::max({kappa[0], kappa[1], gamma[0], gamma[1]}) > 0.2 && !warned.exchange(true)) {
    std::cerr << "warning: decay rates above 0.2 chi; the dispersive picture is marginal\n";
  }
  coin_matrix(coin);
}

Eigen::VectorXd build_interaction_hamiltonian(const OpenSystemConfig& config) {
  const int d = config.fock_dim;
  Eigen::VectorXd e(config.dim());
  for (int n1 = 0; n1 < d; ++n1) {
    for (int q1 = 0; q1 < 2; ++q1) {
      for (int n2 = 0; n2 < d; ++n2) {
        for (int q2 = 0; q2 < 2; ++q2) {
          e(composite_index(d, n1, q1, n2, q2)) =
              config.chi * (n1 * (2.0 * q1 - 1.0) + n2 * (2.0 * q2 - 1.0));
        }
      }
    }
  }
  return e;
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const OpenSystemConfig& config) {
  const Layout L(config.fock_dim);
  if (rho.rows() != L.dim || rho.cols() != L.dim) {
    throw Error(ErrorCode::DimensionMismatch, "rho does not match the configured space");
  }
  ComplexMatrix out;
  Kernel(L, absolute_rates(config)).apply(rho, out);
  const Eigen::VectorXd e = build_interaction_hamiltonian(config);
  for (long y = 0; y < L.dim; ++y) {
    for (long x = 0; x < L.dim; ++x) out(x, y) += -kI * (e(x) - e(y)) * rho(x, y);
  }
  return out;
}

void evolve_in_place(ComplexMatrix& rho, const OpenSystemConfig& config, double t) {
  if (t < 0.0) throw Error(ErrorCode::InvalidArgument, "evolution time must be non-negative");
  if (t == 0.0) return;
  const Layout L(config.fock_dim);
  if (rho.rows() != L.dim || rho.cols() != L.dim) {
    throw Error(ErrorCode::DimensionMismatch, "rho does not match the configured space");
  }
  const Complex tr0 = rho.trace();
  // Without dissipators the frame generator vanishes and the step is exact.
  if (config.dissipative()) {
    integrate_dissipators(rho, L, absolute_rates(config), config.chi, t, config.dt);
  }
  rotate_frame(rho, build_interaction_hamiltonian(config), t);
  symmetrize(rho);
  check_trace(tr0, rho);
}

void dissipate_in_place(ComplexMatrix& rho, const OpenSystemConfig& config, double t) {
  if (t <= 0.0 || !config.dissipative()) return;
  const Layout L(config.fock_dim);
  const Complex tr0 = rho.trace();
  integrate_dissipators(rho, L, absolute_rates(config), 0.0, t, config.dt);
  check_trace(tr0, rho);
}

DensityMatrix evolve(const DensityMatrix& rho, const OpenSystemConfig& config, double t) {
  DensityMatrix out = rho;
  evolve_in_place(out.m, config, t);
  return out;
}

void apply_coin(ComplexMatrix& rho, const ComplexMatrix& coin, int fock_dim) {
  apply_coin_left(rho, coin, fock_dim);
  rho.adjointInPlace();
  apply_coin_left(rho, coin, fock_dim);
  rho.adjointInPlace();
}

void apply_coin(ComplexVector& psi, const ComplexMatrix& coin, int fock_dim) {
  Eigen::Map<ComplexMatrix> col(psi.data(), psi.size(), 1);
  ComplexMatrix m = col;
  apply_coin_left(m, coin, fock_dim);
  psi = m.col(0);
}

ComplexVector initial_state_vector(const OpenSystemConfig& config) {
  const int d = config.fock_dim;
  const ComplexVector p1 = phase_state_vector(config.initial_phase[0], d).entries;
  const ComplexVector p2 = phase_state_vector(config.initial_phase[1], d).entries;
  ComplexVector psi(config.dim());
  for (int n1 = 0; n1 < d; ++n1) {
    for (int q1 = 0; q1 < 2; ++q1) {
      for (int n2 = 0; n2 < d; ++n2) {
        for (int q2 = 0; q2 < 2; ++q2) {
          psi(composite_index(d, n1, q1, n2, q2)) = p1(n1) * p2(n2) * config.initial_coin(2 * q1 + q2);
        }
      }
    }
  }
  return psi;
}

void noisy_walk(const OpenSystemConfig& config, const DensityObserver& observer) {
  config.validate();
  const ComplexMatrix coin = coin_matrix(config.coin);
  const ComplexVector psi0 = initial_state_vector(config);
  ComplexMatrix rho = psi0 * psi0.adjoint();
  observer(0, rho);
  for (int step = 1; step <= config.steps; ++step) {
    dissipate_in_place(rho, config, config.coin_duration);
    apply_coin(rho, coin, config.fock_dim);
    evolve_in_place(rho, config, config.step_time());
    observer(step, rho);
  }
}

std::vector<DensityMatrix> noisy_walk(const OpenSystemConfig& config) {
  std::vector<DensityMatrix> out;
  noisy_walk(config, [&](int, const ComplexMatrix& rho) { out.push_back({config.fock_dim, rho}); });
  return out;
}

std::vector<ComplexVector> ideal_reference(const OpenSystemConfig& config) {
  config.validate();
  const ComplexMatrix coin = coin_matrix(config.coin);
  const Eigen::VectorXd e = build_interaction_hamiltonian(config);
  ComplexVector phases(e.size());
  for (Eigen::Index i = 0; i < e.size(); ++i) phases(i) = std::exp(-kI * (e(i) * config.step_time()));

  std::vector<ComplexVector> out{initial_state_vector(config)};
  for (int step = 1; step <= config.steps; ++step) {
    ComplexVector psi = out.back();
    apply_coin(psi, coin, config.fock_dim);
    psi = psi.cwiseProduct(phases);
    out.push_back(std::move(psi));
  }
  return out;
}

double afd(const ComplexMatrix& rho, const ComplexVector& psi) {
  if (rho.rows() != psi.size() || rho.cols() != psi.size()) {
    throw Error(ErrorCode::DimensionMismatch, "state and density matrix sizes differ");
  }
  const double v = psi.dot(rho * psi).real();
  return std::clamp(v, 0.0, 1.0);
}

ComplexMatrix reduced_cavity(const ComplexMatrix& rho, int fock_dim, int walker) {
  const std::array<int, 4> dims{fock_dim, 2, fock_dim, 2};
  const std::array<int, 1> keep{walker == 0 ? 0 : 2};
  return partial_trace(rho, dims, keep);
}

PhaseDistribution fock_phase_distribution(const ComplexMatrix& rho_cavity, int grid_size) {
  const long d = rho_cavity.rows();
  // c[delta + d - 1] = sum_n rho(n, n + delta)
  std::vector<Complex> diag_sums(2 * d - 1, 0.0);
  for (long n = 0; n < d; ++n) {
    for (long m = 0; m < d; ++m) diag_sums[m - n + d - 1] += rho_cavity(n, m);
  }
  PhaseDistribution p;
  p.kind = PhaseDistribution::Kind::GridSampled;
  p.angles.resize(grid_size);
  p.values.resize(grid_size);
  for (int g = 0; g < grid_size; ++g) {
    const double phi = kTwoPi * g / grid_size;
    Complex acc = 0.0;
    for (long delta = -(d - 1); delta <= d - 1; ++delta) {
      acc += diag_sums[delta + d - 1] * std::polar(1.0, static_cast<double>(delta) * phi);
    }
    p.angles[g] = phi;
    p.values[g] = acc.real() / kTwoPi;
  }
  return p;
}

Complex fock_first_moment(const ComplexMatrix& rho_cavity) {
  Complex mu = 0.0;
  for (long n = 0; n + 1 < rho_cavity.rows(); ++n) mu += rho_cavity(n + 1, n);
  return mu;
}

double top_fock_population(const ComplexMatrix& rho, int fock_dim, int walker) {
  const ComplexMatrix r = reduced_cavity(rho, fock_dim, walker);
  return r(fock_dim - 1, fock_dim - 1).real() + r(fock_dim - 2, fock_dim - 2).real();
}

StateDiagnostics diagnose(const ComplexMatrix& rho, int fock_dim, bool with_eigenvalues) {
  StateDiagnostics s;
  s.trace_error = std::abs(rho.trace() - Complex(1.0));
  s.hermiticity = hermiticity_residual(rho);
  s.top_fock_population =
      std::max(top_fock_population(rho, fock_dim, 0), top_fock_population(rho, fock_dim, 1));
  if (with_eigenvalues) {
    const ComplexMatrix sym = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
    s.min_eigenvalue = solver.eigenvalues().minCoeff();
  }
  return s;
}

SigmaSeries OpenWalkTrace::sigma_series() const {
  SigmaSeries s;
  for (const auto& r : records) {
    if (r.step >= 1) s.entries.push_back({r.step, r.sigma});
  }
  return s;
}

OpenWalkTrace trace_open_walk(const OpenSystemConfig& config, const TraceOptions& options) {
  const std::vector<ComplexVector> reference = ideal_reference(config);
  OpenWalkTrace trace;
  noisy_walk(config, [&](int step, const ComplexMatrix& rho) {
    OpenStepRecord rec;
    rec.step = step;
    rec.sigma = holevo_sigma(fock_phase_distribution(reduced_cavity(rho, config.fock_dim, 0),
                                                     options.grid_size));
    rec.afd = afd(rho, reference[step]);
    rec.diagnostics = diagnose(rho, config.fock_dim, options.check_positivity);
    if (step == 0) trace.initial_top_fock_population = rec.diagnostics.top_fock_population;
    if (rec.diagnostics.top_fock_population >
        trace.initial_top_fock_population + options.truncation_leak_tolerance) {
      trace.truncation_suspect = true;
    }
    trace.records.push_back(rec);
  });
  return trace;
}

}  // namespace qwalk
