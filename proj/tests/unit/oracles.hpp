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

// Reference computations used only by the tests. They deliberately take a
// different route from the library: superoperators are built as explicit
// matrices and exponentiated, partial traces are brute-force loops.

#ifndef MEMCHAN_TESTS_ORACLES_HPP
#define MEMCHAN_TESTS_ORACLES_HPP

#include <cmath>
#include <random>

#include "memchan/qlinalg.hpp"

namespace oracle {

using memchan::cplx;
using memchan::DenseOperator;

inline DenseOperator random_matrix(int d, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  DenseOperator m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = cplx(n(gen), n(gen));
  }
  return m;
}

/// Full-rank random density matrix.
inline DenseOperator random_density(int d, unsigned seed) {
  const DenseOperator g = random_matrix(d, seed);
  DenseOperator rho = g * g.adjoint();
  return rho / rho.trace();
}

/// exp(M) by scaling and squaring with a long Taylor series.
inline DenseOperator expm(const DenseOperator& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
  const DenseOperator a = m / std::pow(2.0, squarings);
  DenseOperator term = DenseOperator::Identity(m.rows(), m.cols());
  DenseOperator sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * a / double(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// Row-major vectorization: vec(A X B) = (A kron B^T) vec(X).
inline Eigen::VectorXcd vec(const DenseOperator& x) {
  Eigen::VectorXcd v(x.size());
  for (int i = 0; i < x.rows(); ++i) {
    for (int j = 0; j < x.cols(); ++j) v(i * x.cols() + j) = x(i, j);
  }
  return v;
}

inline DenseOperator unvec(const Eigen::VectorXcd& v, int d) {
  DenseOperator x(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) x(i, j) = v(i * d + j);
  }
  return x;
}

/// Matrix of rho -> -i[H, rho] + L rho L^dag - 1/2 {L^dag L, rho}.
inline DenseOperator lindblad_superoperator(const DenseOperator& h, const DenseOperator& l) {
  const int d = static_cast<int>(h.rows());
  const DenseOperator id = DenseOperator::Identity(d, d);
  const DenseOperator ldl = l.adjoint() * l;
  const cplx i(0.0, 1.0);
  return -i * (memchan::kron(h, id) - memchan::kron(id, h.transpose())) + memchan::kron(l, l.conjugate()) -
         0.5 * memchan::kron(ldl, id) - 0.5 * memchan::kron(id, ldl.transpose());
}

inline DenseOperator evolve(const DenseOperator& rho, const DenseOperator& superop, double t) {
  return unvec(expm(superop * t) * vec(rho), static_cast<int>(rho.rows()));
}

/// Brute-force partial trace over the middle factor of a (da, db, dc) system.
inline DenseOperator trace_middle(const DenseOperator& op, int da, int db, int dc) {
  DenseOperator out = DenseOperator::Zero(da * dc, da * dc);
  for (int a = 0; a < da; ++a)
    for (int c = 0; c < dc; ++c)
      for (int a2 = 0; a2 < da; ++a2)
        for (int c2 = 0; c2 < dc; ++c2)
          for (int b = 0; b < db; ++b)
            out(a * dc + c, a2 * dc + c2) += op((a * db + b) * dc + c, (a2 * db + b) * dc + c2);
  return out;
}

inline double h2(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

/// Excited amplitude of |e,0> -> c_e |e,0> + c_g |g,1> with the field
/// amplitude decaying at gamma/2, from the 2x2 generator exponential.
inline double excited_amplitude(double gamma, double lambda, double t) {
  DenseOperator m(2, 2);
  const cplx i(0.0, 1.0);
  m << 0.0, -i * lambda, -i * lambda, -gamma / 2.0;
  return expm(m * t)(0, 0).real();
}

}  // namespace oracle

#endif  // MEMCHAN_TESTS_ORACLES_HPP
