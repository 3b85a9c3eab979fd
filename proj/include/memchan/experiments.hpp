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

#ifndef MEMCHAN_EXPERIMENTS_HPP
#define MEMCHAN_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "memchan/dynamics.hpp"
#include "memchan/infomeasures.hpp"
#include "memchan/qlinalg.hpp"

// Two-use numerical studies built on top of the dynamics and entropy layers.
namespace memchan::experiments {

/// Grid points are independent; up to `threads` of them run at once.
/// Results are always assembled in grid order.
struct RunOptions {
  unsigned threads = 1;
};

enum class Quantity { Coherent, Holevo };

/// One grid point of a tau sweep. Failed points keep NaN entries and carry
/// the error text in `status`.
struct SweepRecord {
  ChannelSchedule schedule;
  double sweep_value = 0.0;      ///< the swept variable (tau for tau sweeps)
  double input_parameter = 0.0;  ///< p for coherent runs, p_tilde for Holevo runs
  TwoUseReport report;
  double eta = 0.0;         ///< single-use eta(gamma)
  double baseline = 0.0;    ///< memoryless Q (coherent) or C1 (Holevo) at eta(gamma)
  double memoryless = 0.0;  ///< single-use Ic or chi at the same input parameter
  double mu = 0.0;
  Hygiene hygiene;
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

/// tau_p + {0, 0.25, ..., 10}.
std::vector<double> default_tau_grid(double tau_p);

/// Single-use quantities through the closed-form map at damping gamma.
double memoryless_coherent(double gamma, double lambda, double tau_p, double p, cplx r = 0.0);
double memoryless_holevo(double gamma, double lambda, double tau_p, double p_tilde);

/// Two-use quantities from a reconstructed channel on Q1 Q2.
TwoUseReport coherent_from_map(const LinearMap& channel, double p, cplx r = 0.0);
TwoUseReport holevo_from_map(const LinearMap& channel, const Ensemble& inputs);

/// Purified product input (p, r) on both uses, run directly per tau.
std::vector<SweepRecord> coherent_sweep(const ChannelSchedule& base, const std::vector<double>& taus, double p,
                                        cplx r = 0.0, const RunOptions& options = {});

/// The four separable codewords at p_tilde, each run directly per tau.
std::vector<SweepRecord> holevo_sweep(const ChannelSchedule& base, const std::vector<double>& taus,
                                      double p_tilde, const RunOptions& options = {});

struct InputOptimum {
  double p_opt = 0.0;
  double value = 0.0;
};

/// Maximizes Ic(p) or chi(p_tilde) over [lo, hi] at a fixed schedule: grid
/// step 0.01, golden-section refinement to 1e-5.
InputOptimum optimize_input(const ChannelSchedule& schedule, Quantity quantity, double lo = 0.0, double hi = 1.0);
InputOptimum optimize_input(const LinearMap& channel, Quantity quantity, double lo = 0.0, double hi = 1.0);

struct ThetaRecord {
  double tau = 0.0;
  double theta = 0.0;
  double chi = 0.0;
  double identity_residual = 0.0;
  std::string status = "ok";
};

struct ThetaArgmax {
  double tau = 0.0;
  double theta = 0.0;
  double chi = 0.0;
};

struct ThetaSweep {
  std::vector<ThetaRecord> records;  ///< tau-major, theta-minor
  std::vector<ThetaArgmax> argmax;   ///< one entry per tau
};

/// chi(theta) of the rotated ensemble for every (tau, theta).
ThetaSweep theta_sweep(const ChannelSchedule& base, double p_tilde, const std::vector<double>& theta_grid,
                       const std::vector<double>& taus, const RunOptions& options = {});

/// {0, pi/64, ..., pi}.
std::vector<double> default_theta_grid();

struct DephasingPair {
  SweepRecord plain;
  SweepRecord dephased;
};

/// Same sweep with the oscillator dephased between uses and without.
std::vector<DephasingPair> dephasing_comparison(const ChannelSchedule& base, const std::vector<double>& taus,
                                                Quantity quantity, double input_parameter,
                                                const RunOptions& options = {});

struct ForgetfulnessRecord {
  int idle_slots = 0;  ///< L
  double lhs = 0.0;    ///< || rho'_QO - rho'_Q (x) |0><0| ||_1
  double bound = 0.0;  ///< 4 sqrt(B) e^{-L gamma tau / 2}
  double block_bound = 0.0;
  double mean_photons = 0.0;
};

/// 4 sqrt(B) (M - 1) e^{-L gamma tau / 2}, B = 1 / (1 - e^{-gamma tau}).
double forgetfulness_bound(double gamma, double tau, int idle_slots, int blocks = 2);

/// Runs schedule.n_uses uses on the diagonal product input p and then idle
/// slots of length tau, recording the distance at every L in `idle_grid`.
std::vector<ForgetfulnessRecord> forgetfulness_check(const ChannelSchedule& schedule, double p,
                                                     const std::vector<int>& idle_grid, int blocks = 2);

struct AppendixARecord {
  double p = 0.0;
  double lhs = 0.0;  ///< Ic of the two-use channel
  double rhs = 0.0;  ///< Ic of the one-use channel on the reduced input
  double margin = 0.0;  ///< rhs + 1 - lhs
  bool holds = false;   ///< margin >= -1e-9
};

/// N = L = 1: compares the two-use coherent information of a product input
/// with the one-use value on its first factor plus one bit.
AppendixARecord appendix_a_check(const ChannelSchedule& schedule, double p, cplx r = 0.0);

struct EtaRecord {
  double gamma = 0.0;
  double eta = 0.0;
  double eta_weak = 0.0;
  double h = 0.0;
  double q = 0.0, q_p_star = 0.0;
  double c1 = 0.0, c1_p_star = 0.0;
};

std::vector<EtaRecord> eta_curve(double lambda, double tau_p, const std::vector<double>& gammas);

struct CapacityRecord {
  double eta = 0.0;
  double q = 0.0, q_p_star = 0.0;
  double c1 = 0.0, c1_p_star = 0.0;
};

std::vector<CapacityRecord> capacity_curve(const std::vector<double>& etas);

}  // namespace memchan::experiments

#endif  // MEMCHAN_EXPERIMENTS_HPP
