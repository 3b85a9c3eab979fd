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

#ifndef MEMCHAN_ADMAP_HPP
#define MEMCHAN_ADMAP_HPP

#include <array>

#include "memchan/qlinalg.hpp"
#include "memchan/state.hpp"

// Closed-form results for a single use of the channel with the oscillator
// starting in its ground state: the qubit sees an amplitude-damping channel.
namespace memchan::admap {

/// Amplitude-damping channel with retention probability eta.
class AmplitudeDampingChannel {
 public:
  explicit AmplitudeDampingChannel(double eta);

  double eta() const { return eta_; }
  /// E0 = |g><g| + sqrt(eta)|e><e|, E1 = sqrt(1-eta)|g><e|.
  std::array<DenseOperator, 2> kraus() const;
  LinearMap as_map() const;

 private:
  double eta_;
};

/// Excited-state amplitude after a transit of tau_p with damping gamma:
/// e^{-gamma tau_p/4} [cosh(z tau_p/4) + (gamma/z) sinh(z tau_p/4)],
/// z = sqrt(gamma^2 - 16 lambda^2), evaluated branch-wise.
double h_gamma(double gamma, double lambda, double tau_p);

/// Single-use damping parameter eta(gamma) = h(gamma)^2.
double eta_gamma(double gamma, double lambda, double tau_p);

/// First-order expansion of eta in gamma/lambda.
double eta_weak_damping(double gamma, double lambda, double tau_p);

DensityMatrix apply_ad_channel(const AmplitudeDampingChannel& channel, const DensityMatrix& rho);

/// Single-use map with coherence factor h (which may be negative when
/// lambda tau_p > pi/2); equals apply_ad_channel with eta = h^2 otherwise.
DensityMatrix analytic_single_use(const DensityMatrix& rho_in, double gamma, double lambda, double tau_p);
LinearMap analytic_single_use_map(double gamma, double lambda, double tau_p);

/// -x log2 x - (1-x) log2 (1-x), with 0 log 0 = 0.
double binary_entropy(double x);

struct CapacityResult {
  double value = 0.0;
  double p_star = 0.0;
};

/// Objective H2(eta p) - H2((1-eta) p) maximized for the quantum capacity.
double coherent_objective(double eta, double p);
/// Objective H2(eta p) - H2((1 + sqrt(1 - 4 eta (1-eta) p^2)) / 2) for C1.
double holevo_objective(double eta, double p);

/// Quantum capacity of the memoryless channel (0 for eta <= 1/2).
CapacityResult memoryless_Q(double eta);
/// Product-state classical capacity C1 of the memoryless channel.
CapacityResult memoryless_C1(double eta);

}  // namespace memchan::admap

#endif  // MEMCHAN_ADMAP_HPP
