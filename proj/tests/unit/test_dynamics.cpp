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

#include "doctest.h"
#include "memchan/dynamics.hpp"
#include "memchan/infomeasures.hpp"
#include "oracles.hpp"

using namespace memchan;

namespace {

DenseOperator excitation_number(const SpaceLayout& layout) {
  DenseOperator n = DenseOperator::Zero(layout.dim(), layout.dim());
  const DenseOperator sm = sigma_minus();
  for (const auto& f : layout.factors()) {
    if (f.label.front() == 'Q') n += embed(sm.adjoint() * sm, layout, f.label);
  }
  const DenseOperator a = annihilation(layout.dim_of(kOscillatorLabel));
  n += embed(a.adjoint() * a, layout, kOscillatorLabel);
  return n;
}

}  // namespace

TEST_CASE("schedule defaults and validation messages") {
  const auto s = ChannelSchedule::make(1.0, 0.225, 0.5, 0.05);
  CHECK(s.fock_cutoff == 3);
  CHECK(s.oscillator_dim() == 4);
  CHECK(s.dt == doctest::Approx(0.225 / 1000));
  CHECK(default_dt(1.0, 0.464, 5.0) == doctest::Approx(0.2 / 1000));
  CHECK(s.memory_parameter() == doctest::Approx((1 / 0.05) / (0.5 + 1 / 0.05)));
  CHECK(s.violations().empty());

  auto low_rate = s;
  low_rate.tau = 0.1;
  REQUIRE(low_rate.violations().size() == 1);
  CHECK(low_rate.violations()[0].find("low-rate") != std::string::npos);
  CHECK_THROWS_AS(low_rate.validate(), Error);

  auto cutoff = s;
  cutoff.fock_cutoff = 1;
  REQUIRE(cutoff.violations().size() == 1);
  CHECK(cutoff.violations()[0].find("excitation") != std::string::npos);

  auto coarse = s;
  coarse.dt = 0.01;
  CHECK(coarse.violations().size() == 1);

  auto several = s;
  several.tau = 0.1;
  several.fock_cutoff = 0;
  CHECK(several.violations().size() == 2);
}

TEST_CASE("ladder operators") {
  const DenseOperator a = annihilation(4);
  const DenseOperator comm = a * a.adjoint() - a.adjoint() * a;
  for (int n = 0; n < 3; ++n) CHECK(std::abs(comm(n, n) - 1.0) < 1e-14);
  const DenseOperator sm = sigma_minus();
  CHECK(sm(kGround, kExcited) == cplx(1.0));
  CHECK(sm.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("JC Hamiltonian is Hermitian and conserves excitations") {
  const SpaceLayout l{{"Q1", 2}, {"Q2", 2}, {kOscillatorLabel, 4}};
  const DenseOperator h = jc_hamiltonian("Q2", l, 0.7);
  CHECK(hermiticity_defect(h) < 1e-15);
  const DenseOperator n = excitation_number(l);
  CHECK((h * n - n * h).norm() < 1e-12);
  // Q1 is a spectator.
  const DenseOperator sz1 = embed(sigma_minus().adjoint() * sigma_minus(), l, "Q1");
  CHECK((h * sz1 - sz1 * h).norm() < 1e-12);
  CHECK_THROWS_AS(jc_hamiltonian("Q3", l, 1.0), Error);
}

TEST_CASE("Lindblad generator matches the superoperator oracle") {
  const SpaceLayout l{{"Q1", 2}, {kOscillatorLabel, 3}};
  const double gamma = 0.8;
  const DenseOperator h = jc_hamiltonian("Q1", l, 1.0);
  const DenseOperator jump = std::sqrt(gamma) * embed(annihilation(3), l, kOscillatorLabel);
  const DenseOperator super = oracle::lindblad_superoperator(h, jump);
  const DenseOperator rho = oracle::random_density(6, 21);

  const DenseOperator expect = oracle::unvec(super * oracle::vec(rho), 6);
  CHECK((lindblad_rhs(rho, h, gamma, l) - expect).norm() < 1e-12);
  const LindbladGenerator gen(h, gamma, l);
  DenseOperator out(6, 6);
  gen.apply(rho, out);
  CHECK((out - expect).norm() < 1e-12);
  CHECK(std::abs(expect.trace()) < 1e-12);
}

TEST_CASE("RK4 window reproduces exact propagation") {
  const SpaceLayout l{{"Q1", 2}, {kOscillatorLabel, 3}};
  auto s = ChannelSchedule::make(1.0, 0.685, 1.0, 0.5, 1);
  const DenseOperator h = jc_hamiltonian("Q1", l, s.lambda);
  const DensityMatrix rho(oracle::random_density(6, 22), l);

  SUBCASE("with damping") {
    const DenseOperator jump = std::sqrt(s.gamma) * embed(annihilation(3), l, kOscillatorLabel);
    const DenseOperator exact = oracle::evolve(rho.op(), oracle::lindblad_superoperator(h, jump), s.tau_p);
    CHECK((evolve_window(rho, s, h, s.tau_p).op() - exact).norm() < 1e-10);
  }
  SUBCASE("closed system") {
    s.gamma = 0.0;
    Eigen::SelfAdjointEigenSolver<DenseOperator> es(h);
    const Eigen::VectorXcd phase = (es.eigenvalues().cast<cplx>() * cplx(0.0, -s.tau_p)).array().exp();
    const DenseOperator u = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
    CHECK((evolve_window(rho, s, h, s.tau_p).op() - u * rho.op() * u.adjoint()).norm() < 1e-10);
  }
  SUBCASE("duration not a multiple of dt") {
    const DenseOperator jump = std::sqrt(s.gamma) * embed(annihilation(3), l, kOscillatorLabel);
    const double t = 137.5 * s.dt;
    const DenseOperator exact = oracle::evolve(rho.op(), oracle::lindblad_superoperator(h, jump), t);
    CHECK((evolve_window(rho, s, h, t).op() - exact).norm() < 1e-12);
  }
}

TEST_CASE("analytic idle damping matches the master equation") {
  const SpaceLayout l{{"R1", 2}, {"Q1", 2}, {kOscillatorLabel, 4}};
  const DensityMatrix rho(oracle::random_density(16, 23), l);
  const double gamma = 0.5, t = 1.3;
  const DenseOperator jump = std::sqrt(gamma) * embed(annihilation(4), l, kOscillatorLabel);
  const DenseOperator zero = DenseOperator::Zero(16, 16);
  const DenseOperator exact = oracle::evolve(rho.op(), oracle::lindblad_superoperator(zero, jump), t);
  CHECK((damp_oscillator(rho, gamma, t).op() - exact).norm() < 1e-12);

  auto s = ChannelSchedule::make(1.0, 0.464, 1.764, gamma, 1);
  s.idle = IdleIntegration::RungeKutta;
  CHECK((idle_window(rho, s, t).op() - exact).norm() < 1e-10);
  CHECK((damp_oscillator(rho, gamma, 0.0).op() - rho.op()).norm() < 1e-14);
}

TEST_CASE("excitation number never grows while idling") {
  const SpaceLayout l{{"Q1", 2}, {kOscillatorLabel, 3}};
  DensityMatrix rho(oracle::random_density(6, 24), l);
  const DenseOperator n = excitation_number(l);
  double prev = (n * rho.op()).trace().real();
  for (int k = 0; k < 5; ++k) {
    rho = damp_oscillator(rho, 0.5, 0.3);
    const double now = (n * rho.op()).trace().real();
    CHECK(now <= prev + 1e-14);
    prev = now;
  }
}

TEST_CASE("single use without damping transfers cos^2 of the excitation") {
  const double p = 0.6, lambda = 1.0, tau_p = 0.464;
  const auto s = ChannelSchedule::make(lambda, tau_p, tau_p, 0.0, 1);
  const auto out = run_schedule(single_qubit_input(p, 0.0), s);
  const double pe = out.reduce({"Q1"}).op()(kExcited, kExcited).real();
  CHECK(pe == doctest::Approx(p * std::pow(std::cos(lambda * tau_p), 2)).epsilon(1e-10));
  CHECK(mean_photon_number(out) == doctest::Approx(p * std::pow(std::sin(lambda * tau_p), 2)).epsilon(1e-10));
}

TEST_CASE("schedule run keeps the state physical and records hygiene") {
  auto s = ChannelSchedule::make(1.0, 0.464, 1.464, 0.5);
  Hygiene hy;
  const DensityMatrix qs[] = {single_qubit_input(0.45, 0.1, "Q1"), single_qubit_input(0.45, 0.1, "Q2")};
  const auto out = run_schedule(purify_product(qs), s, hy);
  CHECK(out.layout().labels() == std::vector<std::string>{"R1", "R2", "Q1", "Q2", "O"});
  CHECK(hy.clean());
  CHECK(hy.rk4_steps == 2 * 1000);
  const auto d = diagnose(out.op());
  CHECK(d.trace_error < 1e-12);
  CHECK(d.min_eigenvalue > -1e-12);
  // References are untouched by the channel.
  CHECK((out.reduce({"R1", "R2"}).op() - purify_product(qs).reduce({"R1", "R2"}).op()).norm() < 1e-12);
  CHECK_THROWS_AS(run_schedule(single_qubit_input(0.3, 0.0), s), Error);  // Q2 missing
}

TEST_CASE("RK4 idle agrees with analytic idle inside a schedule") {
  auto s = ChannelSchedule::make(1.0, 0.464, 2.0, 0.5);
  auto r = s;
  r.idle = IdleIntegration::RungeKutta;
  const auto in = diagonal_product_input(0.45, 2);
  CHECK((run_schedule(in, s).op() - run_schedule(in, r).op()).norm() < 1e-10);
}

TEST_CASE("dephasing and pi0 reset") {
  const SpaceLayout l{{"Q1", 2}, {kOscillatorLabel, 3}, {"X", 2}};
  const DensityMatrix rho(oracle::random_density(12, 25), l);
  const auto deph = dephase_oscillator(rho);
  CHECK((deph.reduce({"O"}).op() - rho.reduce({"O"}).op().diagonal().asDiagonal().toDenseMatrix()).norm() < 1e-12);
  CHECK((deph.reduce({"Q1", "X"}).op() - rho.reduce({"Q1", "X"}).op()).norm() < 1e-12);

  const auto reset = pi0_reset(rho);
  CHECK((reset.reduce({"Q1", "X"}).op() - rho.reduce({"Q1", "X"}).op()).norm() < 1e-12);
  const auto pops = oscillator_populations(reset);
  CHECK(pops[0] == doctest::Approx(1.0));
  CHECK(std::abs(pops[1]) + std::abs(pops[2]) < 1e-14);
  const auto w = oscillator_populations(rho);
  double sum = 0.0;
  for (double x : w) sum += x;
  CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("dephasing between uses only, unless asked for after the last") {
  auto s = ChannelSchedule::make(1.0, 0.464, 0.464, 0.5);
  s.dephase_between_uses = true;
  const auto in = diagonal_product_input(0.45, 2);
  const auto a = run_schedule(in, s);
  s.dephase_after_last = true;
  const auto b = run_schedule(in, s);
  CHECK((a.trace_out({"O"}).op() - b.trace_out({"O"}).op()).norm() < 1e-14);
  CHECK((dephase_oscillator(a).op() - b.op()).norm() < 1e-14);
  CHECK((a.op() - b.op()).norm() > 1e-6);
}

TEST_CASE("process tomography reproduces direct propagation") {
  const auto s = ChannelSchedule::make(1.0, 0.464, 0.964, 0.5);
  Hygiene hy;
  const LinearMap e = tomograph_channel(s, hy);
  CHECK(hy.clean());
  CHECK(e.dim_in() == 4);
  const DensityMatrix in(oracle::random_density(4, 26), SpaceLayout{{"Q1", 2}, {"Q2", 2}});
  const DenseOperator direct = run_schedule(in, s).trace_out({"O"}).op();
  CHECK((e.apply(in.op()) - direct).norm() < 1e-10);

  const DensityMatrix qs[] = {single_qubit_input(0.3, 0.2, "Q1"), single_qubit_input(0.3, 0.2, "Q2")};
  const auto joint = purify_product(qs);
  CHECK((e.apply_trailing(joint.op()) - run_schedule(joint, s).trace_out({"O"}).op()).norm() < 1e-10);
}

TEST_CASE("halving the step leaves entropies unchanged to 1e-8") {
  auto s = ChannelSchedule::make(1.0, 0.464, 0.964, 0.5);
  auto fine = s;
  fine.dt = s.dt / 2;
  const DensityMatrix qs[] = {single_qubit_input(0.45, 0.0, "Q1"), single_qubit_input(0.45, 0.0, "Q2")};
  const auto in = purify_product(qs);
  const auto a = coherent_information(run_schedule(in, s).trace_out({"O"}));
  const auto b = coherent_information(run_schedule(in, fine).trace_out({"O"}));
  CHECK(std::abs(a.ic - b.ic) < 1e-8);
  CHECK(std::abs(a.s_e - b.s_e) < 1e-8);
}
