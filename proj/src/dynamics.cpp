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

#include "memchan/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace memchan {

namespace {

constexpr double kExitTolerance = 1e-8;

struct OscillatorIndex {
  int stride = 1;
  int dim = 1;
  int digit(int flat) const { return (flat / stride) % dim; }
};

OscillatorIndex oscillator_index(const SpaceLayout& layout) {
  const std::size_t pos = layout.index_of(kOscillatorLabel);
  OscillatorIndex idx;
  for (std::size_t k = pos + 1; k < layout.size(); ++k) idx.stride *= layout.factors()[k].dim;
  idx.dim = layout.factors()[pos].dim;
  return idx;
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

ChannelSchedule ChannelSchedule::make(double lambda, double tau_p, double tau, double gamma, int n_uses) {
  ChannelSchedule s;
  s.lambda = lambda;
  s.tau_p = tau_p;
  s.tau = tau;
  s.gamma = gamma;
  s.n_uses = n_uses;
  s.fock_cutoff = n_uses + 1;
  s.dt = default_dt(lambda, tau_p, gamma);
  return s;
}

double ChannelSchedule::memory_parameter() const {
  if (gamma <= 0.0) return 0.0;
  const double tau_d = 1.0 / gamma;
  return tau_d / (tau + tau_d);
}

std::vector<std::string> ChannelSchedule::violations() const {
  std::vector<std::string> out;
  if (!(lambda > 0.0)) out.push_back("lambda must be positive");
  if (!(tau_p > 0.0)) out.push_back("tau_p must be positive");
  if (!(tau > 0.0)) out.push_back("tau must be positive");
  if (!(gamma >= 0.0)) out.push_back("gamma must be non-negative");
  if (tau < tau_p) {
    out.push_back("low-rate regime violated: tau must be >= tau_p (overlapping transits are not modelled)");
  }
  if (n_uses < 1) out.push_back("n_uses must be at least 1");
  if (fock_cutoff < n_uses) {
    out.push_back("fock_cutoff must be >= n_uses (at most one excitation enters per use)");
  }
  if (!(dt > 0.0)) out.push_back("dt must be positive");
  if (tau_p > 0.0 && dt > tau_p / 100.0) out.push_back("dt must be <= tau_p / 100");
  return out;
}

void ChannelSchedule::validate() const {
  const auto v = violations();
  if (v.empty()) return;
  std::string msg = "invalid channel schedule:";
  for (const auto& s : v) msg += "\n  - " + s;
  throw Error(msg);
}

double default_dt(double lambda, double tau_p, double gamma) {
  double scale = std::min(tau_p, 1.0 / lambda);
  if (gamma > 0.0) scale = std::min(scale, 1.0 / gamma);
  return scale / 1000.0;
}

DenseOperator annihilation(int dim) {
  DenseOperator a = DenseOperator::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

DenseOperator sigma_minus() {
  DenseOperator s = DenseOperator::Zero(2, 2);
  s(kGround, kExcited) = 1.0;
  return s;
}

DenseOperator jc_hamiltonian(const std::string& active_qubit, const SpaceLayout& layout, double lambda) {
  const DenseOperator a = embed(annihilation(layout.dim_of(kOscillatorLabel)), layout, kOscillatorLabel);
  const DenseOperator sm = embed(sigma_minus(), layout, active_qubit);
  const DenseOperator coupling = a.adjoint() * sm;
  return lambda * (coupling + coupling.adjoint());
}

LindbladGenerator::LindbladGenerator(const DenseOperator& hamiltonian, double gamma, const SpaceLayout& layout)
    : dim_(layout.dim()), gamma_(gamma) {
  if (hamiltonian.rows() != dim_ || hamiltonian.cols() != dim_) {
    throw Error("lindblad generator: Hamiltonian dimension does not match layout " + describe(layout));
  }
  const DenseOperator a = embed(annihilation(layout.dim_of(kOscillatorLabel)), layout, kOscillatorLabel);
  const DenseOperator heff = hamiltonian - cplx(0.0, 0.5 * gamma) * (a.adjoint() * a);
  h_eff_ = heff.sparseView();
  h_eff_adj_ = DenseOperator(heff.adjoint()).sparseView();
  const DenseOperator jump = std::sqrt(gamma) * a;
  jump_ = jump.sparseView();
  jump_adj_ = DenseOperator(jump.adjoint()).sparseView();
}

void LindbladGenerator::apply(const DenseOperator& rho, DenseOperator& out) const {
  // -i (H_eff rho - rho H_eff^dagger) + L rho L^dagger
  out.noalias() = h_eff_ * rho;
  out.noalias() -= rho * h_eff_adj_;
  out *= cplx(0.0, -1.0);
  if (gamma_ > 0.0) {
    const DenseOperator left = jump_ * rho;
    out.noalias() += left * jump_adj_;
  }
}

DenseOperator lindblad_rhs(const DenseOperator& rho, const DenseOperator& hamiltonian, double gamma,
                           const SpaceLayout& layout) {
  if (rho.rows() != layout.dim() || rho.cols() != layout.dim()) {
    throw Error("lindblad_rhs: state dimension does not match layout " + describe(layout));
  }
  LindbladGenerator gen(hamiltonian, gamma, layout);
  DenseOperator out(rho.rows(), rho.cols());
  gen.apply(rho, out);
  return out;
}

void Hygiene::observe(const DenseOperator& rho, const SpaceLayout& layout, bool has_guard_level) {
  const auto d = diagnose(rho);
  max_trace_error = std::max(max_trace_error, d.trace_error);
  min_eigenvalue = std::min(min_eigenvalue, d.min_eigenvalue);
  if (has_guard_level) {
    const auto pops = oscillator_populations(DensityMatrix::unchecked(rho, layout));
    max_guard_population = std::max(max_guard_population, pops.back());
  }
}

void Hygiene::merge(const Hygiene& other) {
  max_trace_error = std::max(max_trace_error, other.max_trace_error);
  min_eigenvalue = std::min(min_eigenvalue, other.min_eigenvalue);
  max_guard_population = std::max(max_guard_population, other.max_guard_population);
  rk4_steps += other.rk4_steps;
}

bool Hygiene::clean() const {
  return max_trace_error <= 1e-9 && min_eigenvalue >= -1e-10 && max_guard_population < 1e-10;
}

namespace {

DensityMatrix integrate_rk4(const DensityMatrix& rho, const LindbladGenerator& gen, double dt, double duration,
                            long* steps_taken) {
  if (duration < 0.0) throw Error("evolve_window: negative duration");
  DenseOperator state = rho.op();
  const Eigen::Index d = state.rows();
  DenseOperator k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);

  const long full_steps = static_cast<long>(std::floor(duration / dt * (1.0 + 1e-12)));
  const double remainder = duration - static_cast<double>(full_steps) * dt;
  long steps = 0;
  auto step = [&](double h) {
    gen.apply(state, k1);
    tmp = state + (0.5 * h) * k1;
    gen.apply(tmp, k2);
    tmp = state + (0.5 * h) * k2;
    gen.apply(tmp, k3);
    tmp = state + h * k3;
    gen.apply(tmp, k4);
    state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    tmp = state.adjoint();
    state = 0.5 * (state + tmp);
    ++steps;
  };
  for (long n = 0; n < full_steps; ++n) step(dt);
  if (remainder > 1e-14 * std::max(1.0, duration)) step(remainder);
  if (steps_taken) *steps_taken += steps;

  const auto diag = diagnose(state);
  if (diag.trace_error > kExitTolerance || diag.min_eigenvalue < -kExitTolerance) {
    std::ostringstream os;
    os << "RK4 window left the set of density matrices (trace error " << diag.trace_error << ", min eigenvalue "
       << diag.min_eigenvalue << "); the step dt=" << dt << " may be too large or the Fock cutoff too small";
    throw Error(os.str());
  }
  return DensityMatrix::unchecked(std::move(state), rho.layout());
}

}  // namespace

DensityMatrix evolve_window(const DensityMatrix& rho, const ChannelSchedule& schedule,
                            const DenseOperator& hamiltonian, double duration) {
  LindbladGenerator gen(hamiltonian, schedule.gamma, rho.layout());
  return integrate_rk4(rho, gen, schedule.dt, duration, nullptr);
}

DensityMatrix damp_oscillator(const DensityMatrix& rho, double gamma, double duration) {
  if (duration < 0.0) throw Error("damp_oscillator: negative duration");
  const SpaceLayout& layout = rho.layout();
  const int dim_o = layout.dim_of(kOscillatorLabel);
  const double keep = std::exp(-gamma * duration);
  DenseOperator out = DenseOperator::Zero(rho.dim(), rho.dim());
  for (int k = 0; k < dim_o; ++k) {
    DenseOperator kraus = DenseOperator::Zero(dim_o, dim_o);
    for (int n = k; n < dim_o; ++n) {
      kraus(n - k, n) = std::sqrt(binomial(n, k) * std::pow(keep, n - k) * std::pow(1.0 - keep, k));
    }
    const DenseOperator full = embed(kraus, layout, kOscillatorLabel);
    out.noalias() += full * rho.op() * full.adjoint();
  }
  return DensityMatrix::unchecked(hermitian_part(out), layout);
}

DensityMatrix idle_window(const DensityMatrix& rho, const ChannelSchedule& schedule, double duration) {
  if (schedule.idle == IdleIntegration::Analytic) return damp_oscillator(rho, schedule.gamma, duration);
  const DenseOperator zero = DenseOperator::Zero(rho.dim(), rho.dim());
  return evolve_window(rho, schedule, zero, duration);
}

DensityMatrix dephase_oscillator(const DensityMatrix& rho) {
  const OscillatorIndex osc = oscillator_index(rho.layout());
  DenseOperator out = rho.op();
  for (int i = 0; i < rho.dim(); ++i) {
    for (int j = 0; j < rho.dim(); ++j) {
      if (osc.digit(i) != osc.digit(j)) out(i, j) = 0.0;
    }
  }
  return DensityMatrix::unchecked(std::move(out), rho.layout());
}

DensityMatrix pi0_reset(const DensityMatrix& rho) {
  const OscillatorIndex osc = oscillator_index(rho.layout());
  std::vector<std::string> rest;
  for (const auto& label : rho.layout().labels()) {
    if (label != kOscillatorLabel) rest.push_back(label);
  }
  const DenseOperator reduced = partial_trace(rho.op(), rho.layout(), std::span<const std::string>(rest));
  // Flat index with oscillator digit removed.
  auto compress = [&](int flat) { return (flat / (osc.stride * osc.dim)) * osc.stride + flat % osc.stride; };
  DenseOperator out = DenseOperator::Zero(rho.dim(), rho.dim());
  for (int i = 0; i < rho.dim(); ++i) {
    if (osc.digit(i) != 0) continue;
    for (int j = 0; j < rho.dim(); ++j) {
      if (osc.digit(j) == 0) out(i, j) = reduced(compress(i), compress(j));
    }
  }
  return DensityMatrix::unchecked(std::move(out), rho.layout());
}

std::vector<double> oscillator_populations(const DensityMatrix& rho) {
  const OscillatorIndex osc = oscillator_index(rho.layout());
  std::vector<double> w(static_cast<std::size_t>(osc.dim), 0.0);
  for (int i = 0; i < rho.dim(); ++i) w[static_cast<std::size_t>(osc.digit(i))] += rho.op()(i, i).real();
  return w;
}

double mean_photon_number(const DensityMatrix& rho) {
  const auto w = oscillator_populations(rho);
  double n = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) n += static_cast<double>(k) * w[k];
  return n;
}

DensityMatrix run_schedule(const DensityMatrix& input, const ChannelSchedule& schedule, Hygiene& hygiene) {
  schedule.validate();
  if (input.layout().contains(kOscillatorLabel)) throw Error("run_schedule: input already contains the oscillator");
  for (int k = 1; k <= schedule.n_uses; ++k) input.layout().index_of(system_label(k));

  const int dim_o = schedule.oscillator_dim();
  DenseOperator ground = DenseOperator::Zero(dim_o, dim_o);
  ground(0, 0) = 1.0;
  DensityMatrix rho = tensor(input, DensityMatrix::unchecked(ground, SpaceLayout{{kOscillatorLabel, dim_o}}));
  const SpaceLayout layout = rho.layout();
  const bool guard = schedule.fock_cutoff > schedule.n_uses;

  for (int k = 1; k <= schedule.n_uses; ++k) {
    const LindbladGenerator transit(jc_hamiltonian(system_label(k), layout, schedule.lambda), schedule.gamma, layout);
    rho = integrate_rk4(rho, transit, schedule.dt, schedule.tau_p, &hygiene.rk4_steps);
    hygiene.observe(rho.op(), layout, guard);

    const double idle = schedule.tau - schedule.tau_p;
    if (schedule.idle == IdleIntegration::Analytic) {
      rho = damp_oscillator(rho, schedule.gamma, idle);
    } else {
      const LindbladGenerator damping(DenseOperator::Zero(layout.dim(), layout.dim()), schedule.gamma, layout);
      rho = integrate_rk4(rho, damping, schedule.dt, idle, &hygiene.rk4_steps);
    }
    hygiene.observe(rho.op(), layout, guard);

    if (schedule.dephase_between_uses && (k < schedule.n_uses || schedule.dephase_after_last)) {
      rho = dephase_oscillator(rho);
    }
  }
  return rho;
}

DensityMatrix run_schedule(const DensityMatrix& input, const ChannelSchedule& schedule) {
  Hygiene ignored;
  return run_schedule(input, schedule, ignored);
}

LinearMap tomograph_channel(const ChannelSchedule& schedule, Hygiene& hygiene) {
  const int n = schedule.n_uses;
  const int d = 1 << n;
  const DensityMatrix out = run_schedule(maximally_entangled(n), schedule, hygiene);
  std::vector<std::string> keep;
  for (int k = 1; k <= n; ++k) keep.push_back(reference_label(k));
  for (int k = 1; k <= n; ++k) keep.push_back(system_label(k));
  const DenseOperator choi = partial_trace(out.op(), out.layout(), std::span<const std::string>(keep));
  // choi = (1/d) sum_ij |i><j|_R (x) E(|i><j|)
  std::vector<DenseOperator> images;
  images.reserve(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) images.push_back(double(d) * choi.block(i * d, j * d, d, d));
  }
  return LinearMap(d, d, std::move(images));
}

LinearMap tomograph_channel(const ChannelSchedule& schedule) {
  Hygiene ignored;
  return tomograph_channel(schedule, ignored);
}

}  // namespace memchan
