// Copyright 2026 The memchan Authors
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

#ifndef MEMCHAN_DYNAMICS_HPP
#define MEMCHAN_DYNAMICS_HPP

#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "memchan/qlinalg.hpp"
#include "memchan/state.hpp"

namespace memchan {

/// How damping-only (idle) windows between transits are propagated.
enum class IdleIntegration {
  Analytic,  ///< exact zero-temperature oscillator damping channel
  RungeKutta ///< same RK4 integrator used for the transit windows
};

/// Physical and numerical parameters of a train of qubits crossing a damped
/// cavity. Times are in units of 1/lambda when lambda = 1.
///
/// Qubit k enters at t = (k-1) tau and interacts for tau_p; each use is
/// followed by an idle window of length tau - tau_p. The bare frequencies of
/// qubits and oscillator do not appear: evolution is in the interaction
/// picture at resonance.
struct ChannelSchedule {
  double lambda = 1.0;
  double tau_p = 0.0;
  double tau = 0.0;
  double gamma = 0.0;
  int n_uses = 2;
  int fock_cutoff = 3;  ///< oscillator dimension is fock_cutoff + 1
  double dt = 0.0;
  bool dephase_between_uses = false;
  bool dephase_after_last = false;
  IdleIntegration idle = IdleIntegration::Analytic;

  /// Schedule with the default cutoff (n_uses + 1 guard level) and step.
  static ChannelSchedule make(double lambda, double tau_p, double tau, double gamma, int n_uses = 2);

  int oscillator_dim() const { return fock_cutoff + 1; }
  /// mu = tau_d / (tau + tau_d) with tau_d = 1/gamma; 0 when gamma is 0.
  double memory_parameter() const;

  /// Every violated constraint, human readable. Empty when valid.
  std::vector<std::string> violations() const;
  void validate() const;
};

/// min(tau_p, 1/gamma, 1/lambda) / 1000.
double default_dt(double lambda, double tau_p, double gamma);

DenseOperator annihilation(int dim);
/// sigma_- = |g><e|.
DenseOperator sigma_minus();

/// lambda (a^dagger sigma_-^(k) + a sigma_+^(k)) on the full layout; the
/// layout must contain the oscillator factor "O" and the named qubit.
DenseOperator jc_hamiltonian(const std::string& active_qubit, const SpaceLayout& layout, double lambda);

/// Sparse Lindblad generator -i[H, rho] + gamma D[a] rho with a acting on
/// the oscillator factor only.
class LindbladGenerator {
 public:
  LindbladGenerator(const DenseOperator& hamiltonian, double gamma, const SpaceLayout& layout);

  int dim() const { return dim_; }
  void apply(const DenseOperator& rho, DenseOperator& out) const;

 private:
  using Sparse = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;
  int dim_;
  double gamma_;
  Sparse h_eff_;      // H - (i gamma / 2) a^dagger a
  Sparse h_eff_adj_;
  Sparse jump_;       // sqrt(gamma) a
  Sparse jump_adj_;
};

DenseOperator lindblad_rhs(const DenseOperator& rho, const DenseOperator& hamiltonian, double gamma,
                           const SpaceLayout& layout);

/// Running record of numerical health checks over one or more windows.
struct Hygiene {
  double max_trace_error = 0.0;
  double min_eigenvalue = 0.0;
  double max_guard_population = 0.0;
  long rk4_steps = 0;

  void observe(const DenseOperator& rho, const SpaceLayout& layout, bool has_guard_level);
  void merge(const Hygiene& other);
  /// trace within 1e-9, min eigenvalue >= -1e-10, guard population < 1e-10.
  bool clean() const;
};

/// Fixed-step RK4 over `duration`; the last step is shortened to land on
/// `duration` exactly. Hermiticity is restored after every step.
DensityMatrix evolve_window(const DensityMatrix& rho, const ChannelSchedule& schedule,
                            const DenseOperator& hamiltonian, double duration);

/// Exact zero-temperature damping of the oscillator factor for `duration`.
DensityMatrix damp_oscillator(const DensityMatrix& rho, double gamma, double duration);

/// Propagates `input` (system qubits Q1..Qn plus optional spectators such as
/// references) through the schedule. The oscillator starts in |0><0| and is
/// appended as the last factor "O".
DensityMatrix run_schedule(const DensityMatrix& input, const ChannelSchedule& schedule);
DensityMatrix run_schedule(const DensityMatrix& input, const ChannelSchedule& schedule, Hygiene& hygiene);

/// One damping-only window of `duration`, using the schedule's idle method.
DensityMatrix idle_window(const DensityMatrix& rho, const ChannelSchedule& schedule, double duration);

/// Zeroes every element off-diagonal in the oscillator Fock index.
DensityMatrix dephase_oscillator(const DensityMatrix& rho);

/// Tr_O[rho] (x) |0><0|, oscillator kept at its position in the layout.
DensityMatrix pi0_reset(const DensityMatrix& rho);

/// w_n = Tr[Pi_n rho] for n = 0..fock_cutoff.
std::vector<double> oscillator_populations(const DensityMatrix& rho);
double mean_photon_number(const DensityMatrix& rho);

/// Channel on Q1..Qn realised by the schedule, reconstructed by evolving the
/// maximally entangled reference-system state (process tomography).
LinearMap tomograph_channel(const ChannelSchedule& schedule);
LinearMap tomograph_channel(const ChannelSchedule& schedule, Hygiene& hygiene);

}  // namespace memchan

#endif  // MEMCHAN_DYNAMICS_HPP
