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

#include "memchan/infomeasures.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace memchan {

double von_neumann_entropy(const DenseOperator& rho) {
  const RealVector eig = eigvals_hermitian(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    double l = eig(i);
    if (l < -1e-12) {
      std::ostringstream os;
      os << "von_neumann_entropy: eigenvalue " << l << " is too negative for a density matrix";
      throw Error(os.str());
    }
    l = std::min(l, 1.0);
    if (l > 1e-15) s -= l * std::log2(l);
  }
  return std::max(0.0, s);
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.op()); }

std::vector<std::string> reference_labels(const SpaceLayout& layout) {
  std::vector<std::string> out;
  for (const auto& f : layout.factors()) {
    if (!f.label.empty() && f.label.front() == 'R') out.push_back(f.label);
  }
  return out;
}

std::vector<std::string> output_labels(const SpaceLayout& layout) {
  std::vector<std::string> out;
  for (const auto& f : layout.factors()) {
    if (f.label.empty() || f.label.front() != 'R') out.push_back(f.label);
  }
  return out;
}

CoherentInfo coherent_information(const DensityMatrix& joint_out) {
  if (joint_out.layout().contains(kOscillatorLabel)) {
    throw Error("coherent_information: trace out the oscillator first");
  }
  const auto outputs = output_labels(joint_out.layout());
  CoherentInfo ci;
  ci.s_e = von_neumann_entropy(joint_out);
  ci.s_out = von_neumann_entropy(joint_out.reduce(outputs));
  ci.ic = ci.s_out - ci.s_e;
  return ci;
}

CoherentInfo per_use_reduction(const DensityMatrix& joint_out, int use_index) {
  const std::string r = reference_label(use_index), q = system_label(use_index);
  joint_out.layout().index_of(r);
  joint_out.layout().index_of(q);
  return coherent_information(joint_out.reduce({r, q}));
}

HolevoInfo holevo_information(const Ensemble& outputs) {
  HolevoInfo h;
  h.s_out = von_neumann_entropy(outputs.average());
  for (const auto& m : outputs.members()) h.avg_s_out += m.xi * von_neumann_entropy(m.sigma);
  h.chi = h.s_out - h.avg_s_out;
  return h;
}

Ensemble per_use_ensemble(const Ensemble& outputs, int use_index) {
  const std::string q = system_label(use_index);
  std::vector<EnsembleMember> members;
  for (const auto& m : outputs.members()) members.push_back({m.xi, m.sigma.reduce({q})});
  return Ensemble(std::move(members));
}

double mutual_information(const DensityMatrix& joint, const std::vector<std::string>& labels_a,
                          const std::vector<std::string>& labels_b) {
  std::set<std::string> seen;
  for (const auto& l : labels_a) seen.insert(l);
  for (const auto& l : labels_b) {
    if (!seen.insert(l).second) throw Error("mutual_information: label '" + l + "' appears on both sides");
  }
  for (const auto& l : joint.layout().labels()) {
    if (!seen.count(l)) throw Error("mutual_information: partition does not cover factor '" + l + "'");
  }
  return von_neumann_entropy(joint.reduce(labels_a)) + von_neumann_entropy(joint.reduce(labels_b)) -
         von_neumann_entropy(joint);
}

double holevo_via_enlarged(const Ensemble& outputs) {
  const int k = static_cast<int>(outputs.size());
  const int d = outputs.layout().dim();
  DenseOperator joint = DenseOperator::Zero(k * d, k * d);
  for (int i = 0; i < k; ++i) {
    const auto& m = outputs.members()[static_cast<std::size_t>(i)];
    joint.block(i * d, i * d, d, d) = m.xi * m.sigma.op();
  }
  SpaceLayout layout = SpaceLayout{{"A", k}}.append(outputs.layout());
  const DensityMatrix cq = DensityMatrix::unchecked(std::move(joint), std::move(layout));
  return mutual_information(cq, {"A"}, outputs.layout().labels());
}

TwoUseReport coherent_report(const DensityMatrix& joint_out, double reference_entropy) {
  TwoUseReport r;
  const auto full = coherent_information(joint_out);
  r.ic = full.ic;
  r.s_e = full.s_e;
  r.s_out = full.s_out;
  const auto u1 = per_use_reduction(joint_out, 1);
  const auto u2 = per_use_reduction(joint_out, 2);
  r.ic1 = u1.ic;
  r.ic2 = u2.ic;
  r.s_e1 = u1.s_e;
  r.s_e2 = u2.s_e;
  r.s_out1 = u1.s_out;
  r.s_out2 = u2.s_out;
  r.corr_rq = r.s_e1 + r.s_e2 - r.s_e;
  const double mi =
      mutual_information(joint_out, reference_labels(joint_out.layout()), output_labels(joint_out.layout()));
  r.identity_residual = std::abs(mi - reference_entropy - r.ic);
  return r;
}

TwoUseReport holevo_report(const Ensemble& outputs) {
  TwoUseReport r;
  const auto full = holevo_information(outputs);
  const auto h1 = holevo_information(per_use_ensemble(outputs, 1));
  const auto h2 = holevo_information(per_use_ensemble(outputs, 2));
  r.chi = full.chi;
  r.s_out = full.s_out;
  r.avg_s_out = full.avg_s_out;
  r.chi1 = h1.chi;
  r.chi2 = h2.chi;
  r.s_out1 = h1.s_out;
  r.s_out2 = h2.s_out;
  r.avg_s_out1 = h1.avg_s_out;
  r.avg_s_out2 = h2.avg_s_out;
  r.identity_residual = std::abs(holevo_via_enlarged(outputs) - r.chi);
  return r;
}

}  // namespace memchan
