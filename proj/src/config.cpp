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

#include "memchan/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace memchan::cli {

namespace {

struct KindInfo {
  ExperimentKind kind;
  const char* name;
  std::vector<std::string> allowed;
  std::vector<std::string> required;
};

const std::vector<std::string> kScheduleKeys = {"lambda", "tau_p",      "gamma", "n_uses",
                                                "fock_cutoff", "dt", "idle", "dephase_after_last"};
const std::vector<std::string> kCommonKeys = {"kind", "output", "threads"};

std::vector<std::string> with_schedule(std::vector<std::string> extra) {
  extra.insert(extra.end(), kScheduleKeys.begin(), kScheduleKeys.end());
  return extra;
}

const std::vector<KindInfo>& kinds() {
  static const std::vector<KindInfo> table = {
      {ExperimentKind::EtaCurve, "eta-curve", {"lambda", "tau_p", "gamma_grid"}, {"tau_p", "gamma_grid"}},
      {ExperimentKind::Capacity, "capacity", {"eta_grid"}, {"eta_grid"}},
      {ExperimentKind::CoherentSweep, "coherent-sweep", with_schedule({"tau_offsets", "p", "r"}),
       {"tau_p", "gamma", "p"}},
      {ExperimentKind::HolevoSweep, "holevo-sweep", with_schedule({"tau_offsets", "p_tilde"}),
       {"tau_p", "gamma", "p_tilde"}},
      {ExperimentKind::Optimize, "optimize", with_schedule({"tau_offsets", "quantity", "p", "p_tilde"}),
       {"tau_p", "gamma", "quantity"}},
      {ExperimentKind::ThetaSweep, "theta-sweep", with_schedule({"tau_offsets", "p_tilde", "theta_divisions"}),
       {"tau_p", "gamma", "p_tilde"}},
      {ExperimentKind::Dephasing, "dephasing", with_schedule({"tau_offsets", "quantity", "p", "p_tilde"}),
       {"tau_p", "gamma", "quantity"}},
      {ExperimentKind::Forgetfulness, "forgetfulness", with_schedule({"tau", "p", "idle_slots", "blocks"}),
       {"tau_p", "gamma", "tau", "p", "idle_slots"}},
      {ExperimentKind::AppendixA, "appendix-a", with_schedule({"tau", "p", "r"}), {"tau_p", "gamma", "tau", "p"}},
  };
  return table;
}

const KindInfo& info(ExperimentKind kind) {
  for (const auto& k : kinds()) {
    if (k.kind == kind) return k;
  }
  throw Error("unknown experiment kind");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) parts.push_back(trim(item));
  return parts;
}

class Reader {
 public:
  Reader(std::map<std::string, std::string> values, std::vector<std::string>& problems)
      : values_(std::move(values)), problems_(problems) {}

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    double v = fallback;
    if (!to_double(values_.at(key), v)) problems_.push_back(key + ": '" + values_.at(key) + "' is not a number");
    return v;
  }

  int integer(const std::string& key, int fallback) {
    if (!has(key)) return fallback;
    const double v = number(key, fallback);
    if (v != std::floor(v)) {
      problems_.push_back(key + ": expected an integer");
      return fallback;
    }
    return static_cast<int>(v);
  }

  bool flag(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const std::string& v = values_.at(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    problems_.push_back(key + ": expected true or false");
    return fallback;
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    return has(key) ? values_.at(key) : fallback;
  }

  std::vector<double> grid(const std::string& key, const std::vector<double>& fallback) {
    if (!has(key)) return fallback;
    const std::string& v = values_.at(key);
    std::vector<double> out;
    if (v.find(':') != std::string::npos) {
      const auto parts = split(v, ':');
      double a = 0, s = 0, b = 0;
      if (parts.size() != 3 || !to_double(parts[0], a) || !to_double(parts[1], s) || !to_double(parts[2], b)) {
        problems_.push_back(key + ": expected start:step:stop");
        return fallback;
      }
      if (!(s > 0.0) || b < a) {
        problems_.push_back(key + ": range needs a positive step and stop >= start");
        return fallback;
      }
      const long n = std::lround((b - a) / s);
      if (std::abs(a + n * s - b) > 1e-9 * std::max(1.0, std::abs(b))) {
        problems_.push_back(key + ": stop is not reached by a whole number of steps");
        return fallback;
      }
      for (long i = 0; i <= n; ++i) out.push_back(a + i * s);
      return out;
    }
    for (const auto& item : split(v, ',')) {
      double x = 0;
      if (!to_double(item, x)) {
        problems_.push_back(key + ": '" + item + "' is not a number");
        return fallback;
      }
      out.push_back(x);
    }
    if (out.empty()) problems_.push_back(key + ": empty grid");
    return out;
  }

 private:
  static bool to_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (errno != 0 || end != s.c_str() + s.size() || !std::isfinite(v)) return false;
    out = v;
    return true;
  }

  std::map<std::string, std::string> values_;
  std::vector<std::string>& problems_;
};

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

}  // namespace

std::string kind_name(ExperimentKind kind) { return info(kind).name; }

std::optional<ExperimentKind> kind_from_name(const std::string& name) {
  for (const auto& k : kinds()) {
    if (name == k.name) return k.kind;
  }
  return std::nullopt;
}

std::vector<std::string> kind_names() {
  std::vector<std::string> out;
  for (const auto& k : kinds()) out.push_back(k.name);
  return out;
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : Error("invalid config:\n  " + join(problems, "\n  ")), problems_(std::move(problems)) {}

bool ExperimentConfig::uses_schedule() const {
  return kind != ExperimentKind::EtaCurve && kind != ExperimentKind::Capacity;
}

std::vector<double> ExperimentConfig::taus() const {
  std::vector<double> out;
  for (double off : tau_offsets) out.push_back(schedule.tau_p + off);
  return out;
}

ExperimentConfig parse_config(const std::string& text) {
  std::vector<std::string> problems;
  std::map<std::string, std::string> values;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      problems.push_back("line " + std::to_string(line_no) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      problems.push_back("line " + std::to_string(line_no) + ": empty key or value");
      continue;
    }
    if (!values.emplace(key, value).second) problems.push_back("key '" + key + "' given more than once");
  }

  if (!values.count("kind")) {
    problems.push_back("missing required key 'kind' (one of: " + join(kind_names(), ", ") + ")");
    throw ConfigError(problems);
  }
  const auto kind = kind_from_name(values.at("kind"));
  if (!kind) {
    problems.push_back("kind: '" + values.at("kind") + "' is not one of: " + join(kind_names(), ", "));
    throw ConfigError(problems);
  }
  const KindInfo& ki = info(*kind);

  std::set<std::string> known(kCommonKeys.begin(), kCommonKeys.end());
  for (const auto& k : kinds()) known.insert(k.allowed.begin(), k.allowed.end());
  for (const auto& [key, value] : values) {
    const bool allowed = std::count(kCommonKeys.begin(), kCommonKeys.end(), key) ||
                         std::count(ki.allowed.begin(), ki.allowed.end(), key);
    if (!known.count(key)) {
      problems.push_back("unknown key '" + key + "'");
    } else if (!allowed) {
      problems.push_back("key '" + key + "' is not used by kind " + ki.name);
    }
  }
  for (const auto& key : ki.required) {
    if (!values.count(key)) problems.push_back("missing required key '" + key + "'");
  }

  Reader rd(values, problems);
  ExperimentConfig cfg;
  cfg.kind = *kind;
  cfg.output = rd.text("output", ki.name);
  const int threads = rd.integer("threads", 1);
  if (threads < 1) problems.push_back("threads: must be at least 1");
  cfg.threads = static_cast<unsigned>(std::max(1, threads));

  const double lambda = rd.number("lambda", 1.0);
  const double tau_p = rd.number("tau_p", 0.0);

  switch (cfg.kind) {
    case ExperimentKind::EtaCurve:
      cfg.schedule.lambda = lambda;
      cfg.schedule.tau_p = tau_p;
      cfg.gamma_grid = rd.grid("gamma_grid", {});
      if (!(lambda > 0.0) || !(tau_p > 0.0)) problems.push_back("lambda and tau_p must be positive");
      for (double g : cfg.gamma_grid) {
        if (g < 0.0) problems.push_back("gamma_grid: damping rates must be non-negative");
      }
      break;
    case ExperimentKind::Capacity:
      cfg.eta_grid = rd.grid("eta_grid", {});
      for (double e : cfg.eta_grid) {
        if (e < 0.0 || e > 1.0) problems.push_back("eta_grid: values must lie in [0, 1]");
      }
      break;
    default:
      break;
  }

  if (cfg.uses_schedule()) {
    const double gamma = rd.number("gamma", 0.0);
    const int n_uses = rd.integer("n_uses", 2);
    const bool fixed_tau =
        cfg.kind == ExperimentKind::Forgetfulness || cfg.kind == ExperimentKind::AppendixA;
    double tau = 0.0;
    if (fixed_tau) {
      tau = rd.number("tau", tau_p);
    } else {
      cfg.tau_offsets = rd.grid("tau_offsets", experiments::default_tau_grid(0.0));
      tau = tau_p + (cfg.tau_offsets.empty() ? 0.0
                                             : *std::min_element(cfg.tau_offsets.begin(), cfg.tau_offsets.end()));
    }
    cfg.schedule = ChannelSchedule::make(lambda, tau_p, tau, gamma, n_uses);
    cfg.schedule.fock_cutoff = rd.integer("fock_cutoff", n_uses + 1);
    if (values.count("dt")) cfg.schedule.dt = rd.number("dt", cfg.schedule.dt);
    cfg.schedule.dephase_after_last = rd.flag("dephase_after_last", false);
    const std::string idle = rd.text("idle", "analytic");
    if (idle == "analytic") {
      cfg.schedule.idle = IdleIntegration::Analytic;
    } else if (idle == "rk4") {
      cfg.schedule.idle = IdleIntegration::RungeKutta;
    } else {
      problems.push_back("idle: expected analytic or rk4");
    }
    for (const auto& v : cfg.schedule.violations()) problems.push_back(v);
    if (n_uses != 2 && cfg.kind != ExperimentKind::Forgetfulness) {
      problems.push_back("n_uses: kind " + std::string(ki.name) + " is a two-use experiment");
    }
    if (cfg.kind == ExperimentKind::Forgetfulness && (n_uses < 1 || n_uses > 2)) {
      problems.push_back("n_uses: forgetfulness supports 1 or 2 uses");
    }
    if (cfg.kind == ExperimentKind::Forgetfulness && !(gamma > 0.0)) {
      problems.push_back("gamma: forgetfulness needs gamma > 0");
    }

    cfg.p = rd.number("p", 0.0);
    cfg.r = rd.number("r", 0.0);
    cfg.p_tilde = rd.number("p_tilde", 0.0);
    if (cfg.p < 0.0 || cfg.p > 1.0) problems.push_back("p: must lie in [0, 1]");
    if (std::abs(cfg.r) > std::sqrt(std::max(0.0, cfg.p * (1.0 - cfg.p))) + 1e-12) {
      problems.push_back("r: |r| must not exceed sqrt(p (1 - p))");
    }
    if (cfg.p_tilde < 0.0 || cfg.p_tilde > 1.0) problems.push_back("p_tilde: must lie in [0, 1]");
    if (values.count("quantity")) {
      const std::string q = values.at("quantity");
      if (q == "coherent") {
        cfg.quantity = experiments::Quantity::Coherent;
      } else if (q == "holevo") {
        cfg.quantity = experiments::Quantity::Holevo;
      } else {
        problems.push_back("quantity: expected coherent or holevo");
      }
      if (cfg.kind == ExperimentKind::Dephasing) {
        const bool coh = cfg.quantity == experiments::Quantity::Coherent;
        const char* needed = coh ? "p" : "p_tilde";
        if (!values.count(needed)) {
          problems.push_back(std::string("missing required key '") + needed + "' for quantity " + q);
        }
      }
    }
    const int divisions = rd.integer("theta_divisions", 64);
    if (divisions < 1) problems.push_back("theta_divisions: must be at least 1");
    for (int k = 0; k <= std::max(1, divisions); ++k) {
      cfg.theta_grid.push_back(std::numbers::pi * k / std::max(1, divisions));
    }
    for (double x : rd.grid("idle_slots", {})) {
      if (x < 0.0 || x != std::floor(x)) {
        problems.push_back("idle_slots: entries must be non-negative integers");
        break;
      }
      cfg.idle_slots.push_back(static_cast<int>(x));
    }
    cfg.blocks = rd.integer("blocks", 2);
    if (cfg.blocks < 2) problems.push_back("blocks: need at least 2");
  }

  if (!problems.empty()) throw ConfigError(problems);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void override_dt(ExperimentConfig& config, double dt) {
  config.schedule.dt = dt;
  const auto v = config.schedule.violations();
  if (!v.empty()) throw ConfigError(v);
}

}  // namespace memchan::cli
