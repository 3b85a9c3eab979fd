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

#ifndef MEMCHAN_STATE_HPP
#define MEMCHAN_STATE_HPP

#include <string>
#include <vector>

#include "memchan/qlinalg.hpp"

namespace memchan {

// Qubit basis convention: index 0 is |g>, index 1 is |e>.
inline constexpr int kGround = 0;
inline constexpr int kExcited = 1;

/// Label helpers for the composite spaces used throughout: system qubits
/// Q1..Qn, their purifying references R1..Rn, and the oscillator O.
std::string system_label(int use);
std::string reference_label(int use);
inline const std::string kOscillatorLabel = "O";

/// Density matrix together with the tensor layout it lives on.
///
/// The checked constructor enforces Hermiticity, unit trace and positivity
/// within `tol`; `unchecked` skips validation for intermediate results.
class DensityMatrix {
 public:
  DensityMatrix(DenseOperator op, SpaceLayout layout, double tol = 1e-10);

  static DensityMatrix unchecked(DenseOperator op, SpaceLayout layout);
  static DensityMatrix pure(const StateVector& psi, SpaceLayout layout);

  const DenseOperator& op() const { return op_; }
  const SpaceLayout& layout() const { return layout_; }
  int dim() const { return static_cast<int>(op_.rows()); }

  /// Reduced state on `keep`, layout order preserved.
  DensityMatrix reduce(std::span<const std::string> keep) const;
  DensityMatrix reduce(std::initializer_list<std::string> keep) const;
  /// Reduced state with the named factors traced out.
  DensityMatrix trace_out(std::initializer_list<std::string> drop) const;

 private:
  struct Unchecked {};
  DensityMatrix(DenseOperator op, SpaceLayout layout, Unchecked);

  DenseOperator op_;
  SpaceLayout layout_;
};

struct DensityDiagnostics {
  double hermiticity = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
};

DensityDiagnostics diagnose(const DenseOperator& op);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

struct EnsembleMember {
  double xi = 0.0;
  DensityMatrix sigma;
};

/// Classical-quantum source {xi_k, sigma_k}.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleMember> members);

  const std::vector<EnsembleMember>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const SpaceLayout& layout() const { return members_.front().sigma.layout(); }
  DensityMatrix average() const;

 private:
  std::vector<EnsembleMember> members_;
};

/// [[1-p, r], [conj(r), p]] in the {|g>, |e>} basis, labelled `label`.
DensityMatrix single_qubit_input(double p, cplx r, const std::string& label = "Q1");

/// Eigen-decomposition purification sum_i sqrt(l_i) |i>_R |v_i>, eigenvalues
/// in descending order. The reference factor "R" is prepended to the layout.
DensityMatrix purify(const DensityMatrix& rho);

/// Purifies each single-qubit state separately; output layout is
/// R1..Rn, Q1..Qn.
DensityMatrix purify_product(std::span<const DensityMatrix> qubits);

/// Maximally entangled state (1/sqrt d) sum_i |i>_R |i>_Q over n qubits with
/// layout R1..Rn, Q1..Qn.
DensityMatrix maximally_entangled(int n_qubits);

/// [(1-p)|g><g| + p|e><e|]^{(x) n} on Q1..Qn.
DensityMatrix diagonal_product_input(double p, int n);

/// sqrt(1-p)|g> + sign*sqrt(p)|e>.
StateVector signed_superposition(double p_tilde, int sign);

/// Four product codewords psi_a (x) psi_b, equal weights, on Q1 Q2.
Ensemble holevo_separable_ensemble(double p_tilde);

/// Rotated ensemble interpolating between the separable codewords and an
/// entangled family; D_k chosen real and positive.
Ensemble theta_ensemble(double theta, double p_tilde);

}  // namespace memchan

#endif  // MEMCHAN_STATE_HPP
