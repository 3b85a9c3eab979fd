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

#ifndef MEMCHAN_CONFIG_HPP
#define MEMCHAN_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "memchan/dynamics.hpp"
#include "memchan/experiments.hpp"

// Experiment configuration files.
//
// One `key = value` pair per line; `#` starts a comment. Grids are written
// either as `start:step:stop` (inclusive) or as a comma-separated list.
// See README.md for the keys each experiment kind accepts.
namespace memchan::cli {

enum class ExperimentKind {
  EtaCurve,
  Capacity,
  CoherentSweep,
  HolevoSweep,
  Optimize,
  ThetaSweep,
  Dephasing,
  Forgetfulness,
  AppendixA,
};

std::string kind_name(ExperimentKind kind);
std::optional<ExperimentKind> kind_from_name(const std::string& name);
std::vector<std::string> kind_names();

/// Thrown by parse_config; what() lists every problem found, one per line.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::CoherentSweep;
  /// For sweeps `tau` holds the first grid point; fixed-tau kinds use it as is.
  ChannelSchedule schedule;
  std::vector<double> tau_offsets;  ///< tau - tau_p for every grid point
  double p = 0.0;
  cplx r = 0.0;
  double p_tilde = 0.0;
  experiments::Quantity quantity = experiments::Quantity::Coherent;
  std::vector<double> gamma_grid;
  std::vector<double> eta_grid;
  std::vector<double> theta_grid;
  std::vector<int> idle_slots;
  int blocks = 2;
  std::string output;  ///< base name of the files written by run()
  unsigned threads = 1;

  bool uses_schedule() const;
  std::vector<double> taus() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Replaces the integrator step and re-checks the schedule.
void override_dt(ExperimentConfig& config, double dt);

}  // namespace memchan::cli

#endif  // MEMCHAN_CONFIG_HPP
