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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "memchan/state.hpp"
#include "oracles.hpp"

using namespace memchan;

TEST_CASE("density matrix validation") {
  const SpaceLayout q{{"Q1", 2}};
  DenseOperator bad = DenseOperator::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix(bad, q), Error);  // trace 2
  bad(0, 1) = 0.3;
  CHECK_THROWS_AS(DensityMatrix(bad / 2.0, q), Error);  // not Hermitian
  DenseOperator neg = DenseOperator::Zero(2, 2);
  neg(0, 0) = 1.2;
  neg(1, 1) = -0.2;
  CHECK_THROWS_AS(DensityMatrix(neg, q), Error);
  CHECK_THROWS_AS(DensityMatrix(DenseOperator::Identity(3, 3) / 3.0, q), Error);  // layout mismatch
  CHECK_NOTHROW(DensityMatrix(DenseOperator::Identity(2, 2) / 2.0, q));
}

TEST_CASE("single-qubit input respects positivity") {
  const auto rho = single_qubit_input(0.3, cplx(0.1, 0.2));
  CHECK(rho.op()(1, 1).real() == doctest::Approx(0.3));
  CHECK(rho.op()(0, 1) == cplx(0.1, 0.2));
  CHECK_NOTHROW(single_qubit_input(0.5, 0.5));
  CHECK_THROWS_AS(single_qubit_input(0.5, 0.51), Error);
  CHECK_THROWS_AS(single_qubit_input(1.2, 0.0), Error);
}

TEST_CASE("purification reduces back to the input and is pure") {
  const auto rho = single_qubit_input(0.3, cplx(0.1, -0.2));
  const auto psi = purify(rho);
  CHECK(psi.layout().labels() == std::vector<std::string>{"R", "Q1"});
  CHECK((psi.reduce({"Q1"}).op() - rho.op()).norm() < 1e-12);
  CHECK(std::abs((psi.op() * psi.op()).trace() - 1.0) < 1e-12);

  const DensityMatrix qs[] = {single_qubit_input(0.2, 0.1, "Q1"), single_qubit_input(0.7, 0.0, "Q2")};
  const auto joint = purify_product(qs);
  CHECK(joint.layout().labels() == std::vector<std::string>{"R1", "R2", "Q1", "Q2"});
  CHECK((joint.reduce({"Q1", "Q2"}).op() - kron(qs[0].op(), qs[1].op())).norm() < 1e-12);
  CHECK((joint.reduce({"R1", "Q1"}).op() - purify(qs[0]).op()).norm() < 1e-12);
}

TEST_CASE("maximally entangled state has maximally mixed marginals") {
  const auto phi = maximally_entangled(2);
  CHECK(phi.dim() == 16);
  CHECK((phi.reduce({"Q1", "Q2"}).op() - DenseOperator::Identity(4, 4) / 4.0).norm() < 1e-12);
  CHECK((phi.reduce({"R2", "Q2"}).op() - maximally_entangled(1).op()).norm() < 1e-12);
}

TEST_CASE("diagonal product input") {
  const auto rho = diagonal_product_input(0.25, 2);
  DenseOperator one = DenseOperator::Zero(2, 2);
  one(0, 0) = 0.75;
  one(1, 1) = 0.25;
  CHECK((rho.op() - kron(one, one)).norm() < 1e-14);
}

TEST_CASE("separable Holevo ensemble averages to the diagonal product") {
  const double pt = 0.4329;
  const Ensemble e = holevo_separable_ensemble(pt);
  REQUIRE(e.size() == 4);
  DenseOperator one = DenseOperator::Zero(2, 2);
  one(0, 0) = 1.0 - pt;
  one(1, 1) = pt;
  CHECK((e.average().op() - kron(one, one)).norm() < 1e-12);
  const StateVector p0 = signed_superposition(pt, +1), p1 = signed_superposition(pt, -1);
  CHECK(std::abs(p0.dot(p1) - (1.0 - 2.0 * pt)) < 1e-12);
}

TEST_CASE("theta ensemble: separable at multiples of pi/2, normalized everywhere") {
  const double pt = 0.4339;
  const Ensemble sep = holevo_separable_ensemble(pt);
  for (double theta : {0.0, std::numbers::pi / 2, std::numbers::pi}) {
    const Ensemble e = theta_ensemble(theta, pt);
    // Each member must coincide with one of the separable codewords.
    for (const auto& m : e.members()) {
      double best = 1e9;
      for (const auto& s : sep.members()) best = std::min(best, (m.sigma.op() - s.sigma.op()).norm());
      CHECK(best < 1e-12);
    }
  }
  for (int k = 0; k <= 16; ++k) {
    const Ensemble e = theta_ensemble(k * std::numbers::pi / 16, pt);
    for (const auto& m : e.members()) {
      CHECK(std::abs(m.sigma.op().trace() - 1.0) < 1e-12);
      CHECK(m.xi == 0.25);
    }
  }
  // At p_tilde = 1/2 and theta = pi/4 the members are Bell states.
  const Ensemble bell = theta_ensemble(std::numbers::pi / 4, 0.5);
  for (const auto& m : bell.members()) {
    CHECK((m.sigma.reduce({"Q1"}).op() - DenseOperator::Identity(2, 2) / 2.0).norm() < 1e-12);
  }
  // p_tilde = 0 makes psi0 = psi1 and pi_1 vanish at theta = pi/4.
  CHECK_THROWS_AS(theta_ensemble(std::numbers::pi / 4, 0.0), Error);
}

TEST_CASE("ensemble validation") {
  const auto a = single_qubit_input(0.1, 0.0);
  CHECK_THROWS_AS(Ensemble({{0.5, a}, {0.4, a}}), Error);
  CHECK_THROWS_AS(Ensemble({{1.5, a}, {-0.5, a}}), Error);
  CHECK_THROWS_AS(Ensemble({{0.5, a}, {0.5, single_qubit_input(0.1, 0.0, "Q2")}}), Error);
}
