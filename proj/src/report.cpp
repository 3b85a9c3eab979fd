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

#include "memchan/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "memchan/admap.hpp"

namespace memchan::cli {

namespace ex = memchan::experiments;

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw Error("table has no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> Table::values(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  for (const auto& row : rows) out.push_back(row[c]);
  return out;
}

void Table::add(std::vector<double> row, std::string row_status) {
  if (row.size() != columns.size()) throw Error("table row has the wrong number of cells");
  rows.push_back(std::move(row));
  status.push_back(std::move(row_status));
}

std::string to_csv(const Table& table) {
  std::string out;
  for (const auto& c : table.columns) out += c + ",";
  out += "status\n";
  char buf[64];
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (double v : table.rows[i]) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      out += ',';
    }
    out += table.status[i] + "\n";
  }
  return out;
}

Table parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Table t;
  if (!std::getline(in, line)) throw Error("parse_csv: empty input");
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) t.columns.push_back(cell);
    if (t.columns.empty() || t.columns.back() != "status") throw Error("parse_csv: last column must be 'status'");
    t.columns.pop_back();
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      const auto comma = line.find(',', pos);
      if (comma == std::string::npos) throw Error("parse_csv: line " + std::to_string(line_no) + " is short");
      const std::string cell = line.substr(pos, comma - pos);
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size()) {
        throw Error("parse_csv: line " + std::to_string(line_no) + ": '" + cell + "' is not a number");
      }
      row.push_back(v);
      pos = comma + 1;
    }
    t.rows.push_back(std::move(row));
    t.status.push_back(line.substr(pos));
  }
  return t;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
  if (!out) throw Error("write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool RunResult::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Passes when pred(i) holds for every i < n; detail names the first failure.
template <typename Pred>
Check check_all(const std::string& name, std::size_t n, Pred pred, const std::vector<double>& where) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!pred(i)) return {name, false, "first failure at " + fmt(where[i])};
  }
  return {name, true, ""};
}

bool non_increasing(const std::vector<double>& v, std::size_t i) { return i == 0 || v[i] <= v[i - 1] + 1e-9; }

std::vector<double> schedule_cells(const ChannelSchedule& s) {
  return {s.lambda, s.tau_p, s.tau,  s.gamma, double(s.n_uses), double(s.fock_cutoff),
          s.dt,     double(s.dephase_between_uses), s.tau - s.tau_p, s.memory_parameter()};
}

const std::vector<std::string> kScheduleColumns = {"lambda", "tau_p", "tau", "gamma", "n_uses", "fock_cutoff",
                                                   "dt", "dephase_between_uses", "tau_minus_tau_p", "mu"};
const std::vector<std::string> kHygieneColumns = {"identity_residual", "max_trace_error", "min_eigenvalue",
                                                  "max_guard_population", "rk4_steps"};

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

void append(std::vector<double>& a, const std::vector<double>& b) { a.insert(a.end(), b.begin(), b.end()); }

Check points_ok(const std::vector<std::string>& status) {
  for (std::size_t i = 0; i < status.size(); ++i) {
    if (status[i] != "ok") return {"every grid point evaluated", false, "row " + std::to_string(i) + ": " + status[i]};
  }
  return {"every grid point evaluated", true, ""};
}

Check hygiene_ok(const std::vector<ex::SweepRecord>& recs) {
  for (const auto& r : recs) {
    if (!r.hygiene.clean()) {
      return {"numerical hygiene", false,
              "tau " + fmt(r.schedule.tau) + ": trace error " + fmt(r.hygiene.max_trace_error) + ", min eigenvalue " +
                  fmt(r.hygiene.min_eigenvalue) + ", guard population " + fmt(r.hygiene.max_guard_population)};
    }
  }
  return {"numerical hygiene", true, ""};
}

void sweep_table(const std::vector<ex::SweepRecord>& recs, ex::Quantity q, RunResult& res) {
  const bool coh = q == ex::Quantity::Coherent;
  std::vector<std::string> cols = concat(kScheduleColumns, {"input_parameter", "eta"});
  if (coh) {
    cols = concat(cols, {"Ic", "Ic_per_use", "Se", "Sout", "Ic1", "Ic2", "Se1", "Se2", "Sout1", "Sout2", "corr_RQ",
                         "Ic_memoryless", "Q_memoryless"});
  } else {
    cols = concat(cols, {"chi", "chi_per_use", "Sout", "avg_Sout", "chi1", "chi2", "Sout1", "Sout2", "avg_Sout1",
                         "avg_Sout2", "chi_memoryless", "C1_memoryless"});
  }
  res.table.columns = concat(cols, kHygieneColumns);
  for (const auto& r : recs) {
    std::vector<double> row = schedule_cells(r.schedule);
    append(row, {r.input_parameter, r.eta});
    const auto& t = r.report;
    if (coh) {
      append(row, {t.ic, t.ic / 2, t.s_e, t.s_out, t.ic1, t.ic2, t.s_e1, t.s_e2, t.s_out1, t.s_out2, t.corr_rq,
                   r.memoryless, r.baseline});
    } else {
      append(row, {t.chi, t.chi / 2, t.s_out, t.avg_s_out, t.chi1, t.chi2, t.s_out1, t.s_out2, t.avg_s_out1,
                   t.avg_s_out2, r.memoryless, r.baseline});
    }
    append(row, {t.identity_residual, r.hygiene.max_trace_error, r.hygiene.min_eigenvalue,
                 r.hygiene.max_guard_population, double(r.hygiene.rk4_steps)});
    res.table.add(std::move(row), r.status);
  }

  std::vector<double> tau, value, ic_avg, corr, resid, lhs_sub, rhs_sub, memless;
  for (const auto& r : recs) {
    tau.push_back(r.schedule.tau);
    value.push_back(coh ? r.report.ic : r.report.chi);
    ic_avg.push_back(0.5 * (r.report.ic1 + r.report.ic2));
    corr.push_back(r.report.corr_rq);
    resid.push_back(r.report.identity_residual);
    memless.push_back(r.memoryless);
    lhs_sub.push_back(r.report.avg_s_out);
    rhs_sub.push_back(r.report.avg_s_out1 + r.report.avg_s_out2);
  }
  const std::size_t n = recs.size();
  res.checks.push_back(points_ok(res.table.status));
  res.checks.push_back(hygiene_ok(recs));
  res.checks.push_back(check_all(coh ? "Ic non-increasing in tau" : "chi non-increasing in tau", n,
                                 [&](std::size_t i) { return non_increasing(value, i); }, tau));
  res.checks.push_back(check_all(coh ? "S(R':Q') - S(R) = Ic within 1e-9" : "S(A:Q') = chi within 1e-9", n,
                                 [&](std::size_t i) { return resid[i] <= 1e-9; }, tau));
  if (coh) {
    res.checks.push_back(check_all("(Ic1 + Ic2)/2 <= single-use Ic + 1e-9", n,
                                   [&](std::size_t i) { return ic_avg[i] <= memless[i] + 1e-9; }, tau));
    res.checks.push_back(check_all("Se1 + Se2 - Se >= -1e-9", n, [&](std::size_t i) { return corr[i] >= -1e-9; },
                                   tau));
  } else {
    res.checks.push_back(check_all("chi >= chi1 + chi2 - 1e-9", n,
                                   [&](std::size_t i) {
                                     return recs[i].report.chi >= recs[i].report.chi1 + recs[i].report.chi2 - 1e-9;
                                   },
                                   tau));
    res.checks.push_back(check_all("<Sout> <= <Sout1> + <Sout2> + 1e-9", n,
                                   [&](std::size_t i) { return lhs_sub[i] <= rhs_sub[i] + 1e-9; }, tau));
  }
}

RunResult run_sweep(const ExperimentConfig& cfg, ex::Quantity q) {
  RunResult res;
  const ex::RunOptions opt{cfg.threads};
  const auto recs = q == ex::Quantity::Coherent ? ex::coherent_sweep(cfg.schedule, cfg.taus(), cfg.p, cfg.r, opt)
                                                : ex::holevo_sweep(cfg.schedule, cfg.taus(), cfg.p_tilde, opt);
  sweep_table(recs, q, res);
  if (!recs.empty()) {
    const bool coh = q == ex::Quantity::Coherent;
    res.summary += std::string("memoryless ") + (coh ? "Q" : "C1") + " at eta(gamma) = " + fmt(recs[0].eta) + ": " +
                   fmt(recs[0].baseline) + "\n";
    res.summary += "single-use " + std::string(coh ? "Ic" : "chi") + " at the input parameter: " +
                   fmt(recs[0].memoryless) + "\n";
  }
  return res;
}

RunResult run_optimize(const ExperimentConfig& cfg) {
  RunResult res;
  const bool coh = cfg.quantity == ex::Quantity::Coherent;
  const double eta = admap::eta_gamma(cfg.schedule.gamma, cfg.schedule.lambda, cfg.schedule.tau_p);
  const auto base = coh ? admap::memoryless_Q(eta) : admap::memoryless_C1(eta);
  const double p_ref = (coh ? cfg.p : cfg.p_tilde) > 0.0 ? (coh ? cfg.p : cfg.p_tilde) : base.p_star;
  res.table.columns = concat(kScheduleColumns, {"p_opt", "value_opt", "value_opt_per_use", "p_reference",
                                                "value_at_reference", "baseline"});
  const auto taus = cfg.taus();
  struct Row {
    ChannelSchedule s;
    ex::InputOptimum best;
    double at_ref = 0.0;
    std::string status = "ok";
  };
  std::vector<Row> rows(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    rows[i].s = cfg.schedule;
    rows[i].s.tau = taus[i];
    try {
      const LinearMap channel = tomograph_channel(rows[i].s);
      rows[i].best = ex::optimize_input(channel, cfg.quantity);
      rows[i].at_ref = coh ? ex::coherent_from_map(channel, p_ref).ic
                           : ex::holevo_from_map(channel, holevo_separable_ensemble(p_ref)).chi;
    } catch (const std::exception& e) {
      rows[i].status = std::string("error: ") + e.what();
      std::replace(rows[i].status.begin(), rows[i].status.end(), ',', ';');
      std::replace(rows[i].status.begin(), rows[i].status.end(), '\n', ' ');
      rows[i].best = {NAN, NAN};
      rows[i].at_ref = NAN;
    }
  }
  for (const auto& r : rows) {
    std::vector<double> row = schedule_cells(r.s);
    append(row, {r.best.p_opt, r.best.value, r.best.value / 2, p_ref, r.at_ref, base.value});
    res.table.add(std::move(row), r.status);
  }
  res.checks.push_back(points_ok(res.table.status));
  res.checks.push_back(check_all("value(p_opt) >= value(p_reference) - 1e-9", rows.size(),
                                 [&](std::size_t i) { return rows[i].best.value >= rows[i].at_ref - 1e-9; }, taus));
  res.summary += "reference input parameter: " + fmt(p_ref) + "\n";
  res.summary += std::string("memoryless ") + (coh ? "Q" : "C1") + " at eta(gamma) = " + fmt(eta) + ": " +
                 fmt(base.value) + "\n";
  return res;
}

double distance_to_half_pi_multiple(double theta) {
  const double k = std::round(theta / (std::numbers::pi / 2));
  return std::abs(theta - k * std::numbers::pi / 2);
}

RunResult run_theta(const ExperimentConfig& cfg) {
  RunResult res;
  const auto taus = cfg.taus();
  const auto sweep = ex::theta_sweep(cfg.schedule, cfg.p_tilde, cfg.theta_grid, taus, {cfg.threads});
  res.table.columns = {"tau", "tau_minus_tau_p", "theta", "chi", "chi_per_use", "identity_residual"};
  for (const auto& r : sweep.records) {
    res.table.add({r.tau, r.tau - cfg.schedule.tau_p, r.theta, r.chi, r.chi / 2, r.identity_residual}, r.status);
  }
  const std::size_t nt = cfg.theta_grid.size();
  const double step = nt > 1 ? cfg.theta_grid[1] - cfg.theta_grid[0] : 0.0;

  res.checks.push_back(points_ok(res.table.status));
  res.checks.push_back(check_all("argmax theta at the grid point nearest a multiple of pi/2", sweep.argmax.size(),
                                 [&](std::size_t i) {
                                   return distance_to_half_pi_multiple(sweep.argmax[i].theta) <= 0.5 * step + 1e-12;
                                 },
                                 taus));
  res.checks.push_back(check_all("chi(theta) curves ordered by tau", sweep.records.size(),
                                 [&](std::size_t i) {
                                   return i < nt || sweep.records[i].chi <= sweep.records[i - nt].chi + 1e-9;
                                 },
                                 res.table.values("tau")));
  res.checks.push_back(check_all("S(A:Q') = chi within 1e-9", sweep.records.size(),
                                 [&](std::size_t i) { return sweep.records[i].identity_residual <= 1e-9; },
                                 res.table.values("tau")));
  // theta and theta + pi give the same chi when both lie on the grid.
  bool periodic = true;
  std::string detail;
  for (std::size_t t = 0; t < taus.size(); ++t) {
    for (std::size_t a = 0; a < nt; ++a) {
      for (std::size_t b = a + 1; b < nt; ++b) {
        if (std::abs(cfg.theta_grid[b] - cfg.theta_grid[a] - std::numbers::pi) > 1e-12) continue;
        if (std::abs(sweep.records[t * nt + a].chi - sweep.records[t * nt + b].chi) > 1e-9) {
          periodic = false;
          detail = "tau " + fmt(taus[t]) + ", theta " + fmt(cfg.theta_grid[a]);
        }
      }
    }
  }
  res.checks.push_back({"chi(theta) = chi(theta + pi) within 1e-9", periodic, detail});
  for (const auto& a : sweep.argmax) {
    res.summary += "tau = " + fmt(a.tau) + ": max chi = " + fmt(a.chi) + " at theta = " + fmt(a.theta) + "\n";
  }
  return res;
}

RunResult run_dephasing(const ExperimentConfig& cfg) {
  RunResult res;
  const bool coh = cfg.quantity == ex::Quantity::Coherent;
  const double param = coh ? cfg.p : cfg.p_tilde;
  const auto pairs = ex::dephasing_comparison(cfg.schedule, cfg.taus(), cfg.quantity, param, {cfg.threads});
  const std::string v = coh ? "Ic" : "chi";
  std::vector<std::string> sched_cols = kScheduleColumns;
  sched_cols.erase(sched_cols.begin() + 7);  // dephase_between_uses differs within the pair
  res.table.columns = concat(sched_cols, {"input_parameter", v, v + "_deph", v + "_per_use",
                                                v + "_deph_per_use", "Sout", "Sout_deph"});
  if (coh) res.table.columns = concat(res.table.columns, {"Se", "Se_deph", "corr_RQ", "corr_RQ_deph"});
  std::vector<ex::SweepRecord> all;
  for (const auto& pr : pairs) {
    const auto& a = pr.plain.report;
    const auto& b = pr.dephased.report;
    const double x = coh ? a.ic : a.chi, y = coh ? b.ic : b.chi;
    std::vector<double> row = schedule_cells(pr.plain.schedule);
    row.erase(row.begin() + 7);
    append(row, {param, x, y, x / 2, y / 2, a.s_out, b.s_out});
    if (coh) append(row, {a.s_e, b.s_e, a.corr_rq, b.corr_rq});
    const std::string status = pr.plain.ok() ? pr.dephased.status : pr.plain.status;
    res.table.add(std::move(row), status);
    all.push_back(pr.plain);
    all.push_back(pr.dephased);
  }
  const auto taus = res.table.values("tau");
  res.checks.push_back(points_ok(res.table.status));
  res.checks.push_back(hygiene_ok(all));
  res.checks.push_back(check_all(v + "_deph <= " + v + " + 1e-9", pairs.size(),
                                 [&](std::size_t i) {
                                   const auto& a = pairs[i].plain.report;
                                   const auto& b = pairs[i].dephased.report;
                                   return (coh ? b.ic : b.chi) <= (coh ? a.ic : a.chi) + 1e-9;
                                 },
                                 taus));
  return res;
}

RunResult run_forgetfulness(const ExperimentConfig& cfg) {
  RunResult res;
  const auto recs = ex::forgetfulness_check(cfg.schedule, cfg.p, cfg.idle_slots, cfg.blocks);
  res.table.columns = {"L", "lhs", "bound", "block_bound", "mean_photons"};
  for (const auto& r : recs) res.table.add({double(r.idle_slots), r.lhs, r.bound, r.block_bound, r.mean_photons});
  const auto ls = res.table.values("L");
  const auto lhs = res.table.values("lhs");
  res.checks.push_back(check_all("lhs <= 4 sqrt(B) exp(-L gamma tau / 2)", recs.size(),
                                 [&](std::size_t i) { return recs[i].lhs <= recs[i].bound; }, ls));
  res.checks.push_back(check_all("lhs non-increasing in L", recs.size(),
                                 [&](std::size_t i) { return non_increasing(lhs, i); }, ls));
  res.summary += "blocks M = " + std::to_string(cfg.blocks) + "\n";
  return res;
}

RunResult run_appendix_a(const ExperimentConfig& cfg) {
  RunResult res;
  const auto r = ex::appendix_a_check(cfg.schedule, cfg.p, cfg.r);
  res.table.columns = {"p", "lhs", "rhs", "margin"};
  res.table.add({r.p, r.lhs, r.rhs, r.margin});
  res.checks.push_back({"Ic(two uses) <= Ic(one use) + 1 + 1e-9", r.holds, "margin " + fmt(r.margin)});
  return res;
}

RunResult run_eta_curve(const ExperimentConfig& cfg) {
  RunResult res;
  const auto recs = ex::eta_curve(cfg.schedule.lambda, cfg.schedule.tau_p, cfg.gamma_grid);
  res.table.columns = {"gamma", "eta", "eta_weak", "h", "Q", "Q_p_star", "C1", "C1_p_star"};
  for (const auto& r : recs) res.table.add({r.gamma, r.eta, r.eta_weak, r.h, r.q, r.q_p_star, r.c1, r.c1_p_star});
  const auto g = res.table.values("gamma");
  res.checks.push_back(check_all("eta in [0, 1] and eta = h^2", recs.size(),
                                 [&](std::size_t i) {
                                   return recs[i].eta >= 0.0 && recs[i].eta <= 1.0 &&
                                          std::abs(recs[i].eta - recs[i].h * recs[i].h) <= 1e-12;
                                 },
                                 g));
  return res;
}

RunResult run_capacity(const ExperimentConfig& cfg) {
  RunResult res;
  const auto recs = ex::capacity_curve(cfg.eta_grid);
  res.table.columns = {"eta", "Q", "Q_p_star", "C1", "C1_p_star"};
  for (const auto& r : recs) res.table.add({r.eta, r.q, r.q_p_star, r.c1, r.c1_p_star});
  res.checks.push_back(check_all("Q <= C1 + 1e-9", recs.size(),
                                 [&](std::size_t i) { return recs[i].q <= recs[i].c1 + 1e-9; },
                                 res.table.values("eta")));
  return res;
}

std::string parameter_echo(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "kind: " << kind_name(cfg.kind) << "\n";
  if (cfg.kind == ExperimentKind::Capacity) {
    os << "eta grid: " << cfg.eta_grid.size() << " points\n";
    return os.str();
  }
  const auto& s = cfg.schedule;
  os << "lambda: " << fmt(s.lambda) << "\ntau_p: " << fmt(s.tau_p) << "\n";
  if (cfg.kind == ExperimentKind::EtaCurve) {
    os << "gamma grid: " << cfg.gamma_grid.size() << " points\n";
    return os.str();
  }
  os << "gamma: " << fmt(s.gamma) << "\nn_uses: " << s.n_uses << "\nfock_cutoff: " << s.fock_cutoff
     << "\ndt: " << fmt(s.dt) << "\nidle: " << (s.idle == IdleIntegration::Analytic ? "analytic" : "rk4") << "\n";
  if (cfg.kind == ExperimentKind::Forgetfulness || cfg.kind == ExperimentKind::AppendixA) {
    os << "tau: " << fmt(s.tau) << "\np: " << fmt(cfg.p) << "\n";
  } else {
    os << "tau - tau_p grid: " << cfg.tau_offsets.size() << " points from " << fmt(cfg.tau_offsets.front())
       << " to " << fmt(cfg.tau_offsets.back()) << "\n";
  }
  return os.str();
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg) {
  RunResult res;
  switch (cfg.kind) {
    case ExperimentKind::EtaCurve: res = run_eta_curve(cfg); break;
    case ExperimentKind::Capacity: res = run_capacity(cfg); break;
    case ExperimentKind::CoherentSweep: res = run_sweep(cfg, ex::Quantity::Coherent); break;
    case ExperimentKind::HolevoSweep: res = run_sweep(cfg, ex::Quantity::Holevo); break;
    case ExperimentKind::Optimize: res = run_optimize(cfg); break;
    case ExperimentKind::ThetaSweep: res = run_theta(cfg); break;
    case ExperimentKind::Dephasing: res = run_dephasing(cfg); break;
    case ExperimentKind::Forgetfulness: res = run_forgetfulness(cfg); break;
    case ExperimentKind::AppendixA: res = run_appendix_a(cfg); break;
  }
  std::string summary = "memchan " + kind_name(cfg.kind) + " run\n\n" + parameter_echo(cfg) + "\n";
  if (!res.summary.empty()) summary += res.summary + "\n";
  summary += "rows: " + std::to_string(res.table.rows.size()) + "\n\nchecks:\n";
  for (const auto& c : res.checks) {
    summary += std::string(c.passed ? "  PASS  " : "  FAIL  ") + c.name;
    if (!c.detail.empty()) summary += " (" + c.detail + ")";
    summary += "\n";
  }
  res.summary = summary;
  return res;
}

RunResult run_and_write(const ExperimentConfig& config, const std::string& out_dir) {
  RunResult res = run_experiment(config);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path base = std::filesystem::path(out_dir) / config.output;
  write_file(base.string() + ".csv", to_csv(res.table));
  write_file(base.string() + ".summary.txt", res.summary);
  return res;
}

}  // namespace memchan::cli
