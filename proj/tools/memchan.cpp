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

// memchan: run experiment configs and write CSV tables plus summaries.
//
//   memchan coherent-sweep --config figures/fig1a_main.cfg --out results
//   memchan validate --config my.cfg
//   memchan presets

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "memchan/config.hpp"
#include "memchan/report.hpp"

#ifndef MEMCHAN_FIGURES_DIR
#define MEMCHAN_FIGURES_DIR "figures"
#endif

namespace {

using memchan::cli::ExperimentConfig;

struct RunFlags {
  std::string config;
  std::string out = "results";
  unsigned threads = 0;
  double dt = 0.0;
};

int run_kind(const std::string& kind, const RunFlags& flags) {
  ExperimentConfig cfg = memchan::cli::load_config(flags.config);
  if (memchan::cli::kind_name(cfg.kind) != kind) {
    std::cerr << "memchan: " << flags.config << " describes a " << memchan::cli::kind_name(cfg.kind)
              << " experiment, not " << kind << "\n";
    return 2;
  }
  if (flags.threads > 0) cfg.threads = flags.threads;
  if (flags.dt > 0.0) memchan::cli::override_dt(cfg, flags.dt);
  const auto result = memchan::cli::run_and_write(cfg, flags.out);
  std::cout << result.summary;
  std::cout << "wrote " << (std::filesystem::path(flags.out) / (cfg.output + ".csv")).string() << "\n";
  return result.all_passed() ? 0 : 1;
}

int list_presets(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".cfg") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    try {
      const auto cfg = memchan::cli::load_config(f.string());
      std::cout << f.filename().string() << "  " << memchan::cli::kind_name(cfg.kind) << "\n";
    } catch (const memchan::Error& e) {
      std::cout << f.filename().string() << "  INVALID: " << e.what() << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Memory amplitude-damping channel simulator"};
  app.require_subcommand(1);

  RunFlags flags;
  std::vector<std::pair<std::string, CLI::App*>> runners;
  for (const auto& kind : memchan::cli::kind_names()) {
    CLI::App* sub = app.add_subcommand(kind, "Run an experiment config of kind " + kind);
    sub->add_option("-c,--config", flags.config, "Experiment config file")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--out", flags.out, "Output directory")->capture_default_str();
    sub->add_option("-j,--threads", flags.threads, "Worker threads (overrides the config)");
    sub->add_option("--dt", flags.dt, "Integrator step (overrides the config)")->check(CLI::PositiveNumber);
    runners.emplace_back(kind, sub);
  }

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "Parse and check a config without running it");
  validate->add_option("-c,--config", validate_path, "Experiment config file")->required()->check(CLI::ExistingFile);

  std::string presets_dir = MEMCHAN_FIGURES_DIR;
  CLI::App* presets = app.add_subcommand("presets", "List the shipped figure configs");
  presets->add_option("--dir", presets_dir, "Preset directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) {
      const auto cfg = memchan::cli::load_config(validate_path);
      std::cout << validate_path << ": valid " << memchan::cli::kind_name(cfg.kind) << " config\n";
      return 0;
    }
    if (*presets) return list_presets(presets_dir);
    for (const auto& [kind, sub] : runners) {
      if (*sub) return run_kind(kind, flags);
    }
  } catch (const memchan::Error& e) {
    std::cerr << "memchan: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "memchan: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
