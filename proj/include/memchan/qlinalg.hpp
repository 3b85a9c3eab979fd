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

#ifndef MEMCHAN_QLINALG_HPP
#define MEMCHAN_QLINALG_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace memchan {

using cplx = std::complex<double>;
using DenseOperator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Raised for every contract violation in the library (bad labels, dimension
/// mismatches, invalid physical parameters, integrator failures).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tolerance below which an operator is considered Hermitian by operations
/// that promise Hermitian output.
inline constexpr double kHermitianTolerance = 1e-12;

/// One tensor factor of a composite Hilbert space.
struct Factor {
  std::string label;
  int dim = 0;

  bool operator==(const Factor&) const = default;
};

/// Ordered list of tensor factors; the first factor is the most significant
/// one in the flattened (row-major) index.
class SpaceLayout {
 public:
  SpaceLayout() = default;
  SpaceLayout(std::initializer_list<Factor> factors);
  explicit SpaceLayout(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  int dim() const;

  bool contains(const std::string& label) const;
  /// Position of a factor; throws Error naming the label if absent.
  std::size_t index_of(const std::string& label) const;
  int dim_of(const std::string& label) const { return factors_[index_of(label)].dim; }
  std::vector<std::string> labels() const;

  /// Layout restricted to the given labels, in this layout's order.
  SpaceLayout subset(std::span<const std::string> keep) const;
  /// Concatenation `*this` followed by `other`.
  SpaceLayout append(const SpaceLayout& other) const;

  bool operator==(const SpaceLayout&) const = default;

 private:
  std::vector<Factor> factors_;
};

std::string describe(const SpaceLayout& layout);

DenseOperator kron(const DenseOperator& a, const DenseOperator& b);
DenseOperator kron(std::initializer_list<DenseOperator> ops);

/// Places `op` on factor `label` and identities everywhere else.
DenseOperator embed(const DenseOperator& op, const SpaceLayout& layout, const std::string& label);

/// Reduced operator on the factors named in `keep` (order of `layout` is kept).
DenseOperator partial_trace(const DenseOperator& op, const SpaceLayout& layout,
                            std::span<const std::string> keep);
DenseOperator partial_trace(const DenseOperator& op, const SpaceLayout& layout,
                            std::initializer_list<std::string> keep);

double hermiticity_defect(const DenseOperator& op);
DenseOperator hermitian_part(const DenseOperator& op);

/// Eigenvalues in ascending order. Input must be Hermitian within `tol`.
RealVector eigvals_hermitian(const DenseOperator& op, double tol = 1e-10);

/// ||a - b||_1, the sum of singular values of the difference.
double trace_norm_distance(const DenseOperator& a, const DenseOperator& b);

/// Linear map on operators, stored as the images of the matrix units |i><j|.
class LinearMap {
 public:
  LinearMap() = default;
  LinearMap(int dim_in, int dim_out, std::vector<DenseOperator> images);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const DenseOperator& image(int i, int j) const { return images_[static_cast<std::size_t>(i * dim_in_ + j)]; }

  DenseOperator apply(const DenseOperator& x) const;
  /// Applies the map to the trailing `dim_in` block of a bipartite operator
  /// (spectator ⊗ input), leaving the spectator untouched.
  DenseOperator apply_trailing(const DenseOperator& joint) const;

  static LinearMap identity(int dim);

 private:
  int dim_in_ = 0;
  int dim_out_ = 0;
  std::vector<DenseOperator> images_;
};

/// Map acting as `first` on the leading factor and `second` on the trailing one.
LinearMap tensor(const LinearMap& first, const LinearMap& second);

}  // namespace memchan

#endif  // MEMCHAN_QLINALG_HPP
