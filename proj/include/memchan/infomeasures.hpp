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

#ifndef MEMCHAN_INFOMEASURES_HPP
#define MEMCHAN_INFOMEASURES_HPP

#include <string>
#include <vector>

#include "memchan/state.hpp"

// Entropic quantities, all in bits.
namespace memchan {

/// -sum l log2 l. Eigenvalues in [-1e-12, 0) count as zero; anything more
/// negative throws, since it signals a broken upstream computation.
double von_neumann_entropy(const DenseOperator& rho);
double von_neumann_entropy(const DensityMatrix& rho);

struct CoherentInfo {
  double ic = 0.0;
  double s_out = 0.0;
  double s_e = 0.0;
};

/// Factors whose label starts with 'R' form the reference; the rest are
/// channel outputs. The oscillator must already be traced out.
CoherentInfo coherent_information(const DensityMatrix& joint_out);

struct HolevoInfo {
  double chi = 0.0;
  double s_out = 0.0;
  double avg_s_out = 0.0;
};

HolevoInfo holevo_information(const Ensemble& outputs);

/// Single-use quantities for use `use_index` (1-based): the other use's
/// reference and system factors are traced out.
CoherentInfo per_use_reduction(const DensityMatrix& joint_out, int use_index);

/// Ensemble of per-use marginals of every member.
Ensemble per_use_ensemble(const Ensemble& outputs, int use_index);

/// S(A) + S(B) - S(AB); the two label sets must partition the layout.
double mutual_information(const DensityMatrix& joint, const std::vector<std::string>& labels_a,
                          const std::vector<std::string>& labels_b);

/// S(A:Q') of the classical-quantum state sum_k xi_k |k><k| (x) sigma_k'.
double holevo_via_enlarged(const Ensemble& outputs);

/// Two-use entropic quantities. Coherent-information runs fill ic..corr_rq,
/// Holevo runs fill chi..avg_s_out2; s_out, s_out1, s_out2 are shared.
struct TwoUseReport {
  double ic = 0.0, s_e = 0.0, s_out = 0.0;
  double ic1 = 0.0, ic2 = 0.0, s_e1 = 0.0, s_e2 = 0.0, s_out1 = 0.0, s_out2 = 0.0;
  double corr_rq = 0.0;  ///< S(R1'Q1' : R2'Q2') = S_e1 + S_e2 - S_e
  double chi = 0.0, chi1 = 0.0, chi2 = 0.0;
  double avg_s_out = 0.0, avg_s_out1 = 0.0, avg_s_out2 = 0.0;
  /// |S(R':Q') - S(R) - Ic| for coherent runs, |S(A:Q') - chi| for Holevo runs.
  double identity_residual = 0.0;
};

/// `reference_entropy` is S(R) of the input purification.
TwoUseReport coherent_report(const DensityMatrix& joint_out, double reference_entropy);
TwoUseReport holevo_report(const Ensemble& outputs);

/// Labels of reference ('R...') and system factors of a layout.
std::vector<std::string> reference_labels(const SpaceLayout& layout);
std::vector<std::string> output_labels(const SpaceLayout& layout);

}  // namespace memchan

#endif  // MEMCHAN_INFOMEASURES_HPP
