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

#include "memchan/qlinalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace memchan {

SpaceLayout::SpaceLayout(std::initializer_list<Factor> factors)
    : SpaceLayout(std::vector<Factor>(factors)) {}

SpaceLayout::SpaceLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::set<std::string> seen;
  for (const auto& f : factors_) {
    if (f.dim <= 0) {
      throw Error("space layout: factor '" + f.label + "' has non-positive dimension");
    }
    if (!seen.insert(f.label).second) {
      throw Error("space layout: duplicate factor label '" + f.label + "'");
    }
  }
}

int SpaceLayout::dim() const {
  int d = 1;
  for (const auto& f : factors_) d *= f.dim;
  return d;
}

bool SpaceLayout::contains(const std::string& label) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const Factor& f) { return f.label == label; });
}

std::size_t SpaceLayout::index_of(const std::string& label) const {
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (factors_[k].label == label) return k;
  }
  throw Error("unknown factor label '" + label + "' in layout " + describe(*this));
}

std::vector<std::string> SpaceLayout::labels() const {
  std::vector<std::string> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.label);
  return out;
}

SpaceLayout SpaceLayout::subset(std::span<const std::string> keep) const {
  for (const auto& label : keep) index_of(label);
  std::vector<Factor> kept;
  for (const auto& f : factors_) {
    if (std::find(keep.begin(), keep.end(), f.label) != keep.end()) kept.push_back(f);
  }
  return SpaceLayout(std::move(kept));
}

SpaceLayout SpaceLayout::append(const SpaceLayout& other) const {
  std::vector<Factor> all = factors_;
  all.insert(all.end(), other.factors_.begin(), other.factors_.end());
  return SpaceLayout(std::move(all));
}

std::string describe(const SpaceLayout& layout) {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < layout.size(); ++k) {
    if (k) os << " x ";
    os << layout.factors()[k].label << ':' << layout.factors()[k].dim;
  }
  os << ']';
  return os.str();
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  DenseOperator out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ca; ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

DenseOperator kron(std::initializer_list<DenseOperator> ops) {
  DenseOperator out = DenseOperator::Identity(1, 1);
  for (const auto& op : ops) out = kron(out, op);
  return out;
}

DenseOperator embed(const DenseOperator& op, const SpaceLayout& layout, const std::string& label) {
  const std::size_t pos = layout.index_of(label);
  const auto& factors = layout.factors();
  if (op.rows() != factors[pos].dim || op.cols() != factors[pos].dim) {
    throw Error("embed: operator dimension does not match factor '" + label + "'");
  }
  int before = 1, after = 1;
  for (std::size_t k = 0; k < pos; ++k) before *= factors[k].dim;
  for (std::size_t k = pos + 1; k < factors.size(); ++k) after *= factors[k].dim;
  return kron({DenseOperator::Identity(before, before), op, DenseOperator::Identity(after, after)});
}

DenseOperator partial_trace(const DenseOperator& op, const SpaceLayout& layout,
                            std::span<const std::string> keep) {
  const int dim = layout.dim();
  if (op.rows() != dim || op.cols() != dim) {
    throw Error("partial_trace: operator dimension " + std::to_string(op.rows()) +
                " does not match layout " + describe(layout));
  }
  std::vector<bool> kept(layout.size(), false);
  for (const auto& label : keep) kept[layout.index_of(label)] = true;

  // Split every flat index into (kept index, traced index) by mixed-radix digits.
  const auto& factors = layout.factors();
  int dim_keep = 1, dim_trace = 1;
  for (std::size_t k = 0; k < factors.size(); ++k) (kept[k] ? dim_keep : dim_trace) *= factors[k].dim;

  std::vector<int> flat(static_cast<std::size_t>(dim_keep) * dim_trace);
  for (int i = 0; i < dim; ++i) {
    int rem = i, ik = 0, it = 0, wk = 1, wt = 1;
    for (std::size_t k = factors.size(); k-- > 0;) {
      const int digit = rem % factors[k].dim;
      rem /= factors[k].dim;
      if (kept[k]) {
        ik += digit * wk;
        wk *= factors[k].dim;
      } else {
        it += digit * wt;
        wt *= factors[k].dim;
      }
    }
    flat[static_cast<std::size_t>(it) * dim_keep + ik] = i;
  }

  DenseOperator out = DenseOperator::Zero(dim_keep, dim_keep);
  for (int t = 0; t < dim_trace; ++t) {
    const int* row = flat.data() + static_cast<std::size_t>(t) * dim_keep;
    for (int a = 0; a < dim_keep; ++a) {
      for (int b = 0; b < dim_keep; ++b) out(a, b) += op(row[a], row[b]);
    }
  }
  return out;
}

DenseOperator partial_trace(const DenseOperator& op, const SpaceLayout& layout,
                            std::initializer_list<std::string> keep) {
  const std::vector<std::string> labels(keep);
  return partial_trace(op, layout, std::span<const std::string>(labels));
}

double hermiticity_defect(const DenseOperator& op) {
  if (op.rows() != op.cols()) throw Error("hermiticity_defect: operator is not square");
  if (op.size() == 0) return 0.0;
  return (op - op.adjoint()).cwiseAbs().maxCoeff();
}

DenseOperator hermitian_part(const DenseOperator& op) {
  return 0.5 * (op + op.adjoint());
}

RealVector eigvals_hermitian(const DenseOperator& op, double tol) {
  const double defect = hermiticity_defect(op);
  if (defect > tol) {
    std::ostringstream os;
    os << "eigvals_hermitian: operator is not Hermitian (max |A - A^dagger| = " << defect << ")";
    throw Error(os.str());
  }
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(hermitian_part(op), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigvals_hermitian: eigensolver did not converge");
  return solver.eigenvalues();
}

double trace_norm_distance(const DenseOperator& a, const DenseOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error("trace_norm_distance: dimension mismatch (" + std::to_string(a.rows()) + " vs " +
                std::to_string(b.rows()) + ")");
  }
  Eigen::JacobiSVD<DenseOperator> svd(a - b);
  return svd.singularValues().sum();
}

LinearMap::LinearMap(int dim_in, int dim_out, std::vector<DenseOperator> images)
    : dim_in_(dim_in), dim_out_(dim_out), images_(std::move(images)) {
  if (images_.size() != static_cast<std::size_t>(dim_in_) * dim_in_) {
    throw Error("LinearMap: expected dim_in^2 images");
  }
  for (const auto& m : images_) {
    if (m.rows() != dim_out_ || m.cols() != dim_out_) throw Error("LinearMap: image has wrong dimension");
  }
}

DenseOperator LinearMap::apply(const DenseOperator& x) const {
  if (x.rows() != dim_in_ || x.cols() != dim_in_) throw Error("LinearMap::apply: dimension mismatch");
  DenseOperator out = DenseOperator::Zero(dim_out_, dim_out_);
  for (int i = 0; i < dim_in_; ++i) {
    for (int j = 0; j < dim_in_; ++j) {
      if (x(i, j) != cplx(0.0)) out += x(i, j) * image(i, j);
    }
  }
  return out;
}

DenseOperator LinearMap::apply_trailing(const DenseOperator& joint) const {
  if (joint.rows() % dim_in_ != 0 || joint.rows() != joint.cols()) {
    throw Error("LinearMap::apply_trailing: joint dimension is not a multiple of the input dimension");
  }
  const Eigen::Index spect = joint.rows() / dim_in_;
  DenseOperator out(spect * dim_out_, spect * dim_out_);
  for (Eigen::Index a = 0; a < spect; ++a) {
    for (Eigen::Index b = 0; b < spect; ++b) {
      out.block(a * dim_out_, b * dim_out_, dim_out_, dim_out_) =
          apply(joint.block(a * dim_in_, b * dim_in_, dim_in_, dim_in_));
    }
  }
  return out;
}

LinearMap LinearMap::identity(int dim) {
  std::vector<DenseOperator> images;
  images.reserve(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      DenseOperator unit = DenseOperator::Zero(dim, dim);
      unit(i, j) = 1.0;
      images.push_back(std::move(unit));
    }
  }
  return LinearMap(dim, dim, std::move(images));
}

LinearMap tensor(const LinearMap& first, const LinearMap& second) {
  const int d1 = first.dim_in(), d2 = second.dim_in();
  const int din = d1 * d2;
  std::vector<DenseOperator> images(static_cast<std::size_t>(din) * din);
  for (int i1 = 0; i1 < d1; ++i1)
    for (int i2 = 0; i2 < d2; ++i2)
      for (int j1 = 0; j1 < d1; ++j1)
        for (int j2 = 0; j2 < d2; ++j2) {
          const int i = i1 * d2 + i2, j = j1 * d2 + j2;
          images[static_cast<std::size_t>(i) * din + j] = kron(first.image(i1, j1), second.image(i2, j2));
        }
  return LinearMap(din, first.dim_out() * second.dim_out(), std::move(images));
}

}  // namespace memchan
