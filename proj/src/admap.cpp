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

#include "memchan/admap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "memchan/maximize.hpp"

namespace memchan::admap {

namespace {

// |z| below this multiple of lambda switches to the series around z = 0.
constexpr double kBranchWidth = 1e-6;

void check_rates(double gamma, double lambda, double tau_p) {
  if (!(lambda > 0.0) || !(tau_p > 0.0) || !(gamma >= 0.0)) {
    throw Error("single-use map requires lambda > 0, tau_p > 0, gamma >= 0");
  }
}

// e^{-gamma tau_p/4} [cosh(x) + (gamma/z) sinh(x)], x = z tau_p / 4, for the
// three regimes of disc = gamma^2 - 16 lambda^2.
double damped_amplitude(double gamma, double lambda, double tau_p) {
  const double disc = gamma * gamma - 16.0 * lambda * lambda;
  const double decay = gamma * tau_p / 4.0;
  if (std::sqrt(std::abs(disc)) < kBranchWidth * lambda) {
    // cosh x ~ 1 + z^2 tau_p^2/32, (gamma/z) sinh x ~ (gamma tau_p/4)(1 + z^2 tau_p^2/96)
    const double z2t2 = disc * tau_p * tau_p;
    return std::exp(-decay) * (1.0 + z2t2 / 32.0 + decay * (1.0 + z2t2 / 96.0));
  }
  if (disc > 0.0) {
    const double z = std::sqrt(disc);
    const double x = z * tau_p / 4.0;
    // Shifted exponents stay non-positive, so large gamma does not overflow.
    const double grow = std::exp(x - decay);
    const double fall = std::exp(-x - decay);
    return 0.5 * (grow + fall) + (gamma / z) * 0.5 * (grow - fall);
  }
  const double w = std::sqrt(-disc);
  const double x = w * tau_p / 4.0;
  return std::exp(-decay) * (std::cos(x) + (gamma / w) * std::sin(x));
}

bool consistency_at_load() {
  const double points[][3] = {{0.0, 1.0, 0.225}, {0.05, 1.0, 0.464}, {0.5, 1.0, 0.685},
                              {4.0, 1.0, 0.464}, {5.0, 1.0, 0.685}, {40.0, 1.0, 1.0}};
  for (const auto& p : points) {
    const double h = h_gamma(p[0], p[1], p[2]);
    const double eta = eta_gamma(p[0], p[1], p[2]);
    if (std::abs(eta - h * h) > 1e-12) {
      std::fprintf(stderr, "memchan: eta(gamma) and h(gamma)^2 disagree at gamma=%g\n", p[0]);
      std::abort();
    }
  }
  return true;
}

[[maybe_unused]] const bool kConsistent = consistency_at_load();

}  // namespace

AmplitudeDampingChannel::AmplitudeDampingChannel(double eta) : eta_(eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw Error("amplitude damping: eta must lie in [0, 1]");
}

std::array<DenseOperator, 2> AmplitudeDampingChannel::kraus() const {
  DenseOperator e0 = DenseOperator::Zero(2, 2), e1 = DenseOperator::Zero(2, 2);
  e0(kGround, kGround) = 1.0;
  e0(kExcited, kExcited) = std::sqrt(eta_);
  e1(kGround, kExcited) = std::sqrt(1.0 - eta_);
  return {e0, e1};
}

LinearMap AmplitudeDampingChannel::as_map() const {
  const auto k = kraus();
  std::vector<DenseOperator> images;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      DenseOperator unit = DenseOperator::Zero(2, 2);
      unit(i, j) = 1.0;
      images.push_back(k[0] * unit * k[0].adjoint() + k[1] * unit * k[1].adjoint());
    }
  }
  return LinearMap(2, 2, std::move(images));
}

double h_gamma(double gamma, double lambda, double tau_p) {
  check_rates(gamma, lambda, tau_p);
  const std::complex<double> z = std::sqrt(std::complex<double>(gamma * gamma - 16.0 * lambda * lambda));
  if (std::abs(z) < kBranchWidth * lambda) return damped_amplitude(gamma, lambda, tau_p);
  // ((gamma + z)/2z) e^{(z-gamma) tau_p/4} - ((gamma - z)/2z) e^{-(z+gamma) tau_p/4}
  const std::complex<double> q = tau_p / 4.0;
  const std::complex<double> value =
      (gamma + z) / (2.0 * z) * std::exp((z - gamma) * q) - (gamma - z) / (2.0 * z) * std::exp(-(z + gamma) * q);
  return value.real();
}

double eta_gamma(double gamma, double lambda, double tau_p) {
  check_rates(gamma, lambda, tau_p);
  const double amp = damped_amplitude(gamma, lambda, tau_p);
  double eta = amp * amp;
  if (eta > 1.0 && eta < 1.0 + 1e-12) eta = 1.0;
  return eta;
}

double eta_weak_damping(double gamma, double lambda, double tau_p) {
  check_rates(gamma, lambda, tau_p);
  const double x = lambda * tau_p;
  const double c = std::cos(x);
  return c * c + gamma / (4.0 * lambda) * (std::sin(2.0 * x) - 2.0 * x * c * c);
}

DensityMatrix apply_ad_channel(const AmplitudeDampingChannel& channel, const DensityMatrix& rho) {
  if (rho.dim() != 2) throw Error("apply_ad_channel: single-qubit state required");
  const double p = rho.op()(kExcited, kExcited).real();
  const cplx r = rho.op()(kGround, kExcited);
  const double eta = channel.eta();
  DenseOperator out(2, 2);
  out << 1.0 - p * eta, r * std::sqrt(eta), std::conj(r) * std::sqrt(eta), p * eta;
  return DensityMatrix(std::move(out), rho.layout());
}

DensityMatrix analytic_single_use(const DensityMatrix& rho_in, double gamma, double lambda, double tau_p) {
  if (rho_in.dim() != 2) throw Error("analytic_single_use: single-qubit state required");
  const double h = h_gamma(gamma, lambda, tau_p);
  const double p = rho_in.op()(kExcited, kExcited).real();
  const cplx r = rho_in.op()(kGround, kExcited);
  DenseOperator out(2, 2);
  out << 1.0 - p * h * h, r * h, std::conj(r) * h, p * h * h;
  return DensityMatrix(std::move(out), rho_in.layout());
}

LinearMap analytic_single_use_map(double gamma, double lambda, double tau_p) {
  const double h = h_gamma(gamma, lambda, tau_p);
  std::vector<DenseOperator> images(4, DenseOperator::Zero(2, 2));
  images[0](kGround, kGround) = 1.0;              // |g><g|
  images[1](kGround, kExcited) = h;               // |g><e|
  images[2](kExcited, kGround) = h;               // |e><g|
  images[3](kGround, kGround) = 1.0 - h * h;      // |e><e|
  images[3](kExcited, kExcited) = h * h;
  return LinearMap(2, 2, std::move(images));
}

double binary_entropy(double x) {
  if (x < -1e-12 || x > 1.0 + 1e-12) throw Error("binary_entropy: argument outside [0, 1]");
  x = std::clamp(x, 0.0, 1.0);
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

double coherent_objective(double eta, double p) {
  return binary_entropy(eta * p) - binary_entropy((1.0 - eta) * p);
}

double holevo_objective(double eta, double p) {
  const double root = std::sqrt(std::max(0.0, 1.0 - 4.0 * eta * (1.0 - eta) * p * p));
  return binary_entropy(eta * p) - binary_entropy(0.5 * (1.0 + root));
}

CapacityResult memoryless_Q(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw Error("memoryless_Q: eta must lie in [0, 1]");
  if (eta <= 0.5) return {0.0, 0.0};
  const auto best = maximize_scalar([eta](double p) { return coherent_objective(eta, p); }, 0.0, 1.0, 1e-3, 1e-8);
  return {best.value, best.argmax};
}

CapacityResult memoryless_C1(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw Error("memoryless_C1: eta must lie in [0, 1]");
  const auto best = maximize_scalar([eta](double p) { return holevo_objective(eta, p); }, 0.0, 1.0, 1e-3, 1e-8);
  return {best.value, best.argmax};
}

}  // namespace memchan::admap
