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

#include "memchan/state.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace memchan {

std::string system_label(int use) { return "Q" + std::to_string(use); }
std::string reference_label(int use) { return "R" + std::to_string(use); }

DensityDiagnostics diagnose(const DenseOperator& op) {
  DensityDiagnostics d;
  d.hermiticity = hermiticity_defect(op);
  d.trace_error = std::abs(op.trace() - cplx(1.0));
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(hermitian_part(op), Eigen::EigenvaluesOnly);
  d.min_eigenvalue = solver.eigenvalues().size() ? solver.eigenvalues()(0) : 0.0;
  return d;
}

DensityMatrix::DensityMatrix(DenseOperator op, SpaceLayout layout, Unchecked)
    : op_(std::move(op)), layout_(std::move(layout)) {
  if (op_.rows() != layout_.dim() || op_.cols() != layout_.dim()) {
    throw Error("density matrix: dimension " + std::to_string(op_.rows()) + " does not match layout " +
                describe(layout_));
  }
}

DensityMatrix::DensityMatrix(DenseOperator op, SpaceLayout layout, double tol)
    : DensityMatrix(std::move(op), std::move(layout), Unchecked{}) {
  const auto d = diagnose(op_);
  if (d.hermiticity > tol || d.trace_error > tol || d.min_eigenvalue < -tol) {
    std::ostringstream os;
    os << "invalid density matrix on " << describe(layout_) << ": hermiticity defect " << d.hermiticity
       << ", trace error " << d.trace_error << ", min eigenvalue " << d.min_eigenvalue;
    throw Error(os.str());
  }
}

DensityMatrix DensityMatrix::unchecked(DenseOperator op, SpaceLayout layout) {
  return DensityMatrix(std::move(op), std::move(layout), Unchecked{});
}

DensityMatrix DensityMatrix::pure(const StateVector& psi, SpaceLayout layout) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-10) throw Error("pure state is not normalized");
  return DensityMatrix(psi * psi.adjoint(), std::move(layout));
}

DensityMatrix DensityMatrix::reduce(std::span<const std::string> keep) const {
  return unchecked(partial_trace(op_, layout_, keep), layout_.subset(keep));
}

DensityMatrix DensityMatrix::reduce(std::initializer_list<std::string> keep) const {
  const std::vector<std::string> labels(keep);
  return reduce(std::span<const std::string>(labels));
}

DensityMatrix DensityMatrix::trace_out(std::initializer_list<std::string> drop) const {
  std::vector<std::string> keep;
  for (const auto& label : layout_.labels()) {
    bool dropped = false;
    for (const auto& d : drop) {
      layout_.index_of(d);
      dropped = dropped || d == label;
    }
    if (!dropped) keep.push_back(label);
  }
  return reduce(std::span<const std::string>(keep));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::unchecked(kron(a.op(), b.op()), a.layout().append(b.layout()));
}

Ensemble::Ensemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {
  if (members_.empty()) throw Error("ensemble: no members");
  double total = 0.0;
  for (const auto& m : members_) {
    if (m.xi < 0.0) throw Error("ensemble: negative probability");
    if (!(m.sigma.layout() == members_.front().sigma.layout())) {
      throw Error("ensemble: members live on different layouts");
    }
    total += m.xi;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error("ensemble: probabilities do not sum to one");
}

DensityMatrix Ensemble::average() const {
  DenseOperator avg = DenseOperator::Zero(layout().dim(), layout().dim());
  for (const auto& m : members_) avg += m.xi * m.sigma.op();
  return DensityMatrix::unchecked(std::move(avg), layout());
}

DensityMatrix single_qubit_input(double p, cplx r, const std::string& label) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("single_qubit_input: p must lie in [0, 1]");
  if (std::abs(r) > std::sqrt(p * (1.0 - p)) + 1e-12) {
    throw Error("single_qubit_input: |r| exceeds sqrt(p(1-p)); the state would not be positive");
  }
  DenseOperator op(2, 2);
  op << 1.0 - p, r, std::conj(r), p;
  return DensityMatrix(std::move(op), SpaceLayout{{label, 2}});
}

namespace {

// Pure state sum_i sqrt(l_i) |i>_R |v_i>, eigenvalues descending.
StateVector eigen_purification(const DenseOperator& rho) {
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(hermitian_part(rho));
  const Eigen::Index d = rho.rows();
  StateVector psi = StateVector::Zero(d * d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const Eigen::Index src = d - 1 - k;
    const double lambda = std::max(0.0, solver.eigenvalues()(src));
    psi.segment(k * d, d) = std::sqrt(lambda) * solver.eigenvectors().col(src);
  }
  return psi / psi.norm();
}

}  // namespace

DensityMatrix purify(const DensityMatrix& rho) {
  const int d = rho.dim();
  SpaceLayout layout = SpaceLayout{{"R", d}}.append(rho.layout());
  return DensityMatrix::pure(eigen_purification(rho.op()), std::move(layout));
}

DensityMatrix purify_product(std::span<const DensityMatrix> qubits) {
  const int n = static_cast<int>(qubits.size());
  if (n == 0) throw Error("purify_product: no qubits");
  // Build the interleaved product R1 Q1 R2 Q2 ..., then reorder to R.. Q...
  StateVector psi = StateVector::Ones(1);
  for (const auto& q : qubits) {
    if (q.dim() != 2) throw Error("purify_product: every factor must be a single qubit");
    const StateVector local = eigen_purification(q.op());
    StateVector next(psi.size() * 4);
    for (Eigen::Index a = 0; a < psi.size(); ++a) next.segment(a * 4, 4) = psi(a) * local;
    psi = std::move(next);
  }
  const Eigen::Index dim = psi.size();
  StateVector ordered(dim);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    // interleaved bits (most significant first): r1 q1 r2 q2 ...
    Eigen::Index rbits = 0, qbits = 0;
    for (int k = 0; k < n; ++k) {
      const int shift = 2 * (n - 1 - k);
      rbits = (rbits << 1) | ((idx >> (shift + 1)) & 1);
      qbits = (qbits << 1) | ((idx >> shift) & 1);
    }
    ordered((rbits << n) | qbits) = psi(idx);
  }
  std::vector<Factor> factors;
  for (int k = 1; k <= n; ++k) factors.push_back({reference_label(k), 2});
  for (int k = 1; k <= n; ++k) factors.push_back({system_label(k), 2});
  return DensityMatrix::pure(ordered, SpaceLayout(std::move(factors)));
}

DensityMatrix maximally_entangled(int n_qubits) {
  const int d = 1 << n_qubits;
  StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) psi(static_cast<Eigen::Index>(i) * d + i) = 1.0 / std::sqrt(double(d));
  std::vector<Factor> factors;
  for (int k = 1; k <= n_qubits; ++k) factors.push_back({reference_label(k), 2});
  for (int k = 1; k <= n_qubits; ++k) factors.push_back({system_label(k), 2});
  return DensityMatrix::pure(psi, SpaceLayout(std::move(factors)));
}

DensityMatrix diagonal_product_input(double p, int n) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("diagonal_product_input: p must lie in [0, 1]");
  if (n < 1) throw Error("diagonal_product_input: n must be at least 1");
  DenseOperator op = DenseOperator::Identity(1, 1);
  DenseOperator single = DenseOperator::Zero(2, 2);
  single(kGround, kGround) = 1.0 - p;
  single(kExcited, kExcited) = p;
  std::vector<Factor> factors;
  for (int k = 1; k <= n; ++k) {
    op = kron(op, single);
    factors.push_back({system_label(k), 2});
  }
  return DensityMatrix(std::move(op), SpaceLayout(std::move(factors)));
}

StateVector signed_superposition(double p_tilde, int sign) {
  StateVector psi(2);
  psi(kGround) = std::sqrt(1.0 - p_tilde);
  psi(kExcited) = (sign >= 0 ? 1.0 : -1.0) * std::sqrt(p_tilde);
  return psi;
}

namespace {

void check_p_tilde(double p_tilde) {
  if (!(p_tilde >= 0.0 && p_tilde <= 1.0)) throw Error("ensemble parameter p_tilde must lie in [0, 1]");
}

const SpaceLayout& two_qubit_layout() {
  static const SpaceLayout layout{{"Q1", 2}, {"Q2", 2}};
  return layout;
}

}  // namespace

Ensemble holevo_separable_ensemble(double p_tilde) {
  check_p_tilde(p_tilde);
  const StateVector psi[2] = {signed_superposition(p_tilde, +1), signed_superposition(p_tilde, -1)};
  std::vector<EnsembleMember> members;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const StateVector v = kron(psi[a], psi[b]);
      members.push_back({0.25, DensityMatrix::pure(v, two_qubit_layout())});
    }
  }
  return Ensemble(std::move(members));
}

Ensemble theta_ensemble(double theta, double p_tilde) {
  check_p_tilde(p_tilde);
  const StateVector psi0 = signed_superposition(p_tilde, +1);
  const StateVector psi1 = signed_superposition(p_tilde, -1);
  const StateVector v01 = kron(psi0, psi1), v10 = kron(psi1, psi0);
  const StateVector v00 = kron(psi0, psi0), v11 = kron(psi1, psi1);
  const double c = std::cos(theta), s = std::sin(theta);
  const StateVector raw[4] = {c * v01 + s * v10, s * v01 - c * v10, c * v00 + s * v11, s * v00 - c * v11};

  std::vector<EnsembleMember> members;
  for (int k = 0; k < 4; ++k) {
    const double norm = raw[k].norm();
    if (norm < 1e-8) {
      std::ostringstream os;
      os << "theta_ensemble: state " << k << " has vanishing norm " << norm << " before normalization (theta="
         << theta << ", p_tilde=" << p_tilde << ")";
      throw Error(os.str());
    }
    members.push_back({0.25, DensityMatrix::pure(raw[k] / norm, two_qubit_layout())});
  }
  return Ensemble(std::move(members));
}

}  // namespace memchan
