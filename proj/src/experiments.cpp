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

#include "memchan/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <set>
#include <thread>

#include "memchan/admap.hpp"
#include "memchan/maximize.hpp"
#include "memchan/state.hpp"

namespace memchan::experiments {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Evaluates f(0..n-1) on up to `threads` workers; slot i always holds f(i).
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t n, unsigned threads, F&& f) {
  std::vector<T> out(n);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) out[i] = f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

TwoUseReport nan_report() {
  TwoUseReport r;
  for (double* v : {&r.ic, &r.s_e, &r.s_out, &r.ic1, &r.ic2, &r.s_e1, &r.s_e2, &r.s_out1, &r.s_out2, &r.corr_rq,
                    &r.chi, &r.chi1, &r.chi2, &r.avg_s_out, &r.avg_s_out1, &r.avg_s_out2, &r.identity_residual}) {
    *v = kNaN;
  }
  return r;
}

std::string failure_status(const std::exception& e) {
  std::string s = std::string("error: ") + e.what();
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

DensityMatrix product_purification(double p, cplx r, int n) {
  std::vector<DensityMatrix> qubits;
  for (int k = 1; k <= n; ++k) qubits.push_back(single_qubit_input(p, r, system_label(k)));
  return purify_product(qubits);
}

ChannelSchedule at_tau(const ChannelSchedule& base, double tau) {
  ChannelSchedule s = base;
  s.tau = tau;
  return s;
}

SweepRecord blank_record(const ChannelSchedule& schedule, double input_parameter) {
  SweepRecord rec;
  rec.schedule = schedule;
  rec.sweep_value = schedule.tau;
  rec.input_parameter = input_parameter;
  rec.mu = schedule.memory_parameter();
  rec.eta = admap::eta_gamma(schedule.gamma, schedule.lambda, schedule.tau_p);
  return rec;
}

SweepRecord coherent_point(const ChannelSchedule& schedule, double p, cplx r) {
  SweepRecord rec = blank_record(schedule, p);
  rec.baseline = admap::memoryless_Q(rec.eta).value;
  rec.memoryless = memoryless_coherent(schedule.gamma, schedule.lambda, schedule.tau_p, p, r);
  try {
    const DensityMatrix input = product_purification(p, r, 2);
    const double s_ref = von_neumann_entropy(input.reduce({reference_label(1), reference_label(2)}));
    const DensityMatrix out = run_schedule(input, schedule, rec.hygiene).trace_out({kOscillatorLabel});
    rec.report = coherent_report(out, s_ref);
  } catch (const std::exception& e) {
    rec.report = nan_report();
    rec.status = failure_status(e);
  }
  return rec;
}

SweepRecord holevo_point(const ChannelSchedule& schedule, double p_tilde) {
  SweepRecord rec = blank_record(schedule, p_tilde);
  rec.baseline = admap::memoryless_C1(rec.eta).value;
  rec.memoryless = memoryless_holevo(schedule.gamma, schedule.lambda, schedule.tau_p, p_tilde);
  try {
    const Ensemble inputs = holevo_separable_ensemble(p_tilde);
    std::vector<EnsembleMember> outputs;
    for (const auto& m : inputs.members()) {
      outputs.push_back({m.xi, run_schedule(m.sigma, schedule, rec.hygiene).trace_out({kOscillatorLabel})});
    }
    rec.report = holevo_report(Ensemble(std::move(outputs)));
  } catch (const std::exception& e) {
    rec.report = nan_report();
    rec.status = failure_status(e);
  }
  return rec;
}

void check_two_use(const ChannelSchedule& s, const char* who) {
  if (s.n_uses != 2) throw Error(std::string(who) + ": two-use schedule required");
}

}  // namespace

std::vector<double> default_tau_grid(double tau_p) {
  std::vector<double> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(tau_p + 0.25 * i);
  return grid;
}

std::vector<double> default_theta_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 64; ++i) grid.push_back(std::numbers::pi * i / 64.0);
  return grid;
}

double memoryless_coherent(double gamma, double lambda, double tau_p, double p, cplx r) {
  const LinearMap single = admap::analytic_single_use_map(gamma, lambda, tau_p);
  const DensityMatrix input = product_purification(p, r, 1);
  const DensityMatrix out = DensityMatrix::unchecked(single.apply_trailing(input.op()), input.layout());
  return coherent_information(out).ic;
}

double memoryless_holevo(double gamma, double lambda, double tau_p, double p_tilde) {
  const LinearMap single = admap::analytic_single_use_map(gamma, lambda, tau_p);
  std::vector<EnsembleMember> outputs;
  for (int sign : {+1, -1}) {
    const StateVector psi = signed_superposition(p_tilde, sign);
    const DenseOperator out = single.apply(psi * psi.adjoint());
    outputs.push_back({0.5, DensityMatrix::unchecked(out, SpaceLayout{{system_label(1), 2}})});
  }
  return holevo_information(Ensemble(std::move(outputs))).chi;
}

TwoUseReport coherent_from_map(const LinearMap& channel, double p, cplx r) {
  if (channel.dim_in() != 4 || channel.dim_out() != 4) throw Error("coherent_from_map: two-qubit channel required");
  const DensityMatrix input = product_purification(p, r, 2);
  const double s_ref = von_neumann_entropy(input.reduce({reference_label(1), reference_label(2)}));
  const DensityMatrix out = DensityMatrix::unchecked(channel.apply_trailing(input.op()), input.layout());
  return coherent_report(out, s_ref);
}

TwoUseReport holevo_from_map(const LinearMap& channel, const Ensemble& inputs) {
  if (channel.dim_in() != inputs.layout().dim()) throw Error("holevo_from_map: ensemble does not match channel input");
  std::vector<EnsembleMember> outputs;
  for (const auto& m : inputs.members()) {
    outputs.push_back({m.xi, DensityMatrix::unchecked(channel.apply(m.sigma.op()), m.sigma.layout())});
  }
  return holevo_report(Ensemble(std::move(outputs)));
}

std::vector<SweepRecord> coherent_sweep(const ChannelSchedule& base, const std::vector<double>& taus, double p,
                                        cplx r, const RunOptions& options) {
  check_two_use(base, "coherent_sweep");
  single_qubit_input(p, r);
  return parallel_map<SweepRecord>(taus.size(), options.threads,
                                   [&](std::size_t i) { return coherent_point(at_tau(base, taus[i]), p, r); });
}

std::vector<SweepRecord> holevo_sweep(const ChannelSchedule& base, const std::vector<double>& taus, double p_tilde,
                                      const RunOptions& options) {
  check_two_use(base, "holevo_sweep");
  if (!(p_tilde >= 0.0 && p_tilde <= 1.0)) throw Error("holevo_sweep: p_tilde must lie in [0, 1]");
  return parallel_map<SweepRecord>(taus.size(), options.threads,
                                   [&](std::size_t i) { return holevo_point(at_tau(base, taus[i]), p_tilde); });
}

InputOptimum optimize_input(const LinearMap& channel, Quantity quantity, double lo, double hi) {
  if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) throw Error("optimize_input: bounds must satisfy 0 <= lo <= hi <= 1");
  auto objective = [&](double x) {
    if (quantity == Quantity::Coherent) return coherent_from_map(channel, x).ic;
    return holevo_from_map(channel, holevo_separable_ensemble(x)).chi;
  };
  const auto best = maximize_scalar(objective, lo, hi, 0.01, 1e-5);
  return {best.argmax, best.value};
}

InputOptimum optimize_input(const ChannelSchedule& schedule, Quantity quantity, double lo, double hi) {
  check_two_use(schedule, "optimize_input");
  return optimize_input(tomograph_channel(schedule), quantity, lo, hi);
}

ThetaSweep theta_sweep(const ChannelSchedule& base, double p_tilde, const std::vector<double>& theta_grid,
                       const std::vector<double>& taus, const RunOptions& options) {
  check_two_use(base, "theta_sweep");
  if (theta_grid.empty() || taus.empty()) throw Error("theta_sweep: empty grid");
  const auto channels = parallel_map<LinearMap>(taus.size(), options.threads,
                                                [&](std::size_t i) { return tomograph_channel(at_tau(base, taus[i])); });
  ThetaSweep out;
  for (std::size_t t = 0; t < taus.size(); ++t) {
    ThetaArgmax best{taus[t], kNaN, -std::numeric_limits<double>::infinity()};
    for (double theta : theta_grid) {
      ThetaRecord rec{taus[t], theta, kNaN, kNaN, "ok"};
      try {
        const auto report = holevo_from_map(channels[t], theta_ensemble(theta, p_tilde));
        rec.chi = report.chi;
        rec.identity_residual = report.identity_residual;
        if (rec.chi > best.chi + 1e-12) best = {taus[t], theta, rec.chi};
      } catch (const std::exception& e) {
        rec.status = failure_status(e);
      }
      out.records.push_back(rec);
    }
    out.argmax.push_back(best);
  }
  return out;
}

std::vector<DephasingPair> dephasing_comparison(const ChannelSchedule& base, const std::vector<double>& taus,
                                                Quantity quantity, double input_parameter,
                                                const RunOptions& options) {
  check_two_use(base, "dephasing_comparison");
  ChannelSchedule plain = base, dephased = base;
  plain.dephase_between_uses = false;
  dephased.dephase_between_uses = true;
  auto sweep = [&](const ChannelSchedule& s) {
    return quantity == Quantity::Coherent ? coherent_sweep(s, taus, input_parameter, 0.0, options)
                                          : holevo_sweep(s, taus, input_parameter, options);
  };
  const auto a = sweep(plain);
  const auto b = sweep(dephased);
  std::vector<DephasingPair> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back({a[i], b[i]});
  return out;
}

double forgetfulness_bound(double gamma, double tau, int idle_slots, int blocks) {
  if (!(gamma > 0.0) || !(tau > 0.0)) throw Error("forgetfulness bound needs gamma > 0 and tau > 0");
  if (blocks < 2) throw Error("forgetfulness bound needs at least two blocks");
  const double b = 1.0 / (1.0 - std::exp(-gamma * tau));
  return 4.0 * std::sqrt(b) * (blocks - 1) * std::exp(-idle_slots * gamma * tau / 2.0);
}

std::vector<ForgetfulnessRecord> forgetfulness_check(const ChannelSchedule& schedule, double p,
                                                     const std::vector<int>& idle_grid, int blocks) {
  if (!(schedule.gamma > 0.0)) throw Error("forgetfulness_check: gamma = 0 leaves the channel with permanent memory");
  if (schedule.n_uses < 1 || schedule.n_uses > 2) throw Error("forgetfulness_check: supports N = 1 or 2 uses");
  const std::set<int> wanted(idle_grid.begin(), idle_grid.end());
  if (wanted.empty() || *wanted.begin() < 0) throw Error("forgetfulness_check: idle counts must be non-negative");

  DensityMatrix rho = run_schedule(diagonal_product_input(p, schedule.n_uses), schedule);
  std::vector<ForgetfulnessRecord> out;
  int done = 0;
  for (int target : wanted) {
    for (; done < target; ++done) rho = idle_window(rho, schedule, schedule.tau);
    ForgetfulnessRecord rec;
    rec.idle_slots = target;
    rec.lhs = trace_norm_distance(rho.op(), pi0_reset(rho).op());
    rec.bound = forgetfulness_bound(schedule.gamma, schedule.tau, target, 2);
    rec.block_bound = forgetfulness_bound(schedule.gamma, schedule.tau, target, blocks);
    rec.mean_photons = mean_photon_number(rho);
    out.push_back(rec);
  }
  return out;
}

AppendixARecord appendix_a_check(const ChannelSchedule& schedule, double p, cplx r) {
  check_two_use(schedule, "appendix_a_check");
  AppendixARecord rec;
  rec.p = p;

  const DensityMatrix full_in = product_purification(p, r, 2);
  rec.lhs = coherent_information(run_schedule(full_in, schedule).trace_out({kOscillatorLabel})).ic;

  ChannelSchedule one = schedule;
  one.n_uses = 1;
  const DensityMatrix reduced_in = product_purification(p, r, 1);
  rec.rhs = coherent_information(run_schedule(reduced_in, one).trace_out({kOscillatorLabel})).ic;

  rec.margin = rec.rhs + 1.0 - rec.lhs;
  rec.holds = rec.margin >= -1e-9;
  return rec;
}

std::vector<EtaRecord> eta_curve(double lambda, double tau_p, const std::vector<double>& gammas) {
  std::vector<EtaRecord> out;
  for (double g : gammas) {
    EtaRecord rec;
    rec.gamma = g;
    rec.eta = admap::eta_gamma(g, lambda, tau_p);
    rec.eta_weak = admap::eta_weak_damping(g, lambda, tau_p);
    rec.h = admap::h_gamma(g, lambda, tau_p);
    const auto q = admap::memoryless_Q(rec.eta);
    const auto c1 = admap::memoryless_C1(rec.eta);
    rec.q = q.value;
    rec.q_p_star = q.p_star;
    rec.c1 = c1.value;
    rec.c1_p_star = c1.p_star;
    out.push_back(rec);
  }
  return out;
}

std::vector<CapacityRecord> capacity_curve(const std::vector<double>& etas) {
  std::vector<CapacityRecord> out;
  for (double eta : etas) {
    const auto q = admap::memoryless_Q(eta);
    const auto c1 = admap::memoryless_C1(eta);
    out.push_back({eta, q.value, q.p_star, c1.value, c1.p_star});
  }
  return out;
}

}  // namespace memchan::experiments
