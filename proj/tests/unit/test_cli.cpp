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
#include <filesystem>
#include <limits>
#include <random>

#include "doctest.h"
#include "memchan/config.hpp"
#include "memchan/report.hpp"

using namespace memchan;
using namespace memchan::cli;

namespace {

bool mentions(const ConfigError& e, const std::string& needle) {
  for (const auto& p : e.problems()) {
    if (p.find(needle) != std::string::npos) return true;
  }
  return false;
}

ConfigError error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("config was accepted: " << text);
  return ConfigError({});
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("memchan_test_" + name);
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("kind names round-trip") {
  for (const auto& n : kind_names()) {
    const auto k = kind_from_name(n);
    REQUIRE(k.has_value());
    CHECK(kind_name(*k) == n);
  }
  CHECK_FALSE(kind_from_name("nope").has_value());
}

TEST_CASE("minimal coherent sweep config") {
  const auto c = parse_config(
      "kind = coherent-sweep\n"
      "# comment\n"
      "tau_p = 0.464   # trailing comment\n"
      "gamma = 0.5\n"
      "p = 0.45\n"
      "tau_offsets = 0, 0.5, 2\n"
      "output = x\n");
  CHECK(c.kind == ExperimentKind::CoherentSweep);
  CHECK(c.schedule.lambda == 1.0);
  CHECK(c.schedule.n_uses == 2);
  CHECK(c.schedule.fock_cutoff == 3);
  CHECK(c.schedule.tau == doctest::Approx(0.464));
  const auto taus = c.taus();
  REQUIRE(taus.size() == 3);
  CHECK(taus[2] == doctest::Approx(2.464));
  CHECK(c.output == "x");
}

TEST_CASE("default tau grid when no offsets are given") {
  const auto c = parse_config("kind = holevo-sweep\ntau_p = 0.464\ngamma = 0.05\np_tilde = 0.4329\n");
  CHECK(c.taus().size() == 41);
}

TEST_CASE("grids") {
  const auto c = parse_config("kind = eta-curve\ntau_p = 0.464\ngamma_grid = 0:0.25:1\n");
  REQUIRE(c.gamma_grid.size() == 5);
  CHECK(c.gamma_grid[4] == doctest::Approx(1.0));
  const auto e = error_of("kind = eta-curve\ntau_p = 0.464\ngamma_grid = 0:-1:1\n");
  CHECK(mentions(e, "gamma_grid"));
  CHECK(mentions(error_of("kind = capacity\neta_grid = 0.1, x\n"), "eta_grid"));
}

TEST_CASE("low-rate and excitation violations are reported") {
  CHECK(mentions(error_of("kind = appendix-a\ntau_p = 0.464\ngamma = 0.5\ntau = 0.3\np = 0.4\n"), "low-rate"));
  CHECK(mentions(error_of("kind = appendix-a\ntau_p = 0.464\ngamma = 0.5\ntau = 1\np = 0.4\nfock_cutoff = 1\n"),
                 "excitation"));
  CHECK(mentions(error_of("kind = coherent-sweep\ntau_p = 0.464\ngamma = 0.5\np = 0.4\ntau_offsets = -0.1, 0\n"),
                 "low-rate"));
}

TEST_CASE("unknown, misplaced, duplicate and missing keys") {
  CHECK(mentions(error_of("kind = capacity\neta_grid = 0.5\nfoo = 1\n"), "unknown key 'foo'"));
  CHECK(mentions(error_of("kind = capacity\neta_grid = 0.5\np = 0.3\n"), "key 'p' is not used by kind capacity"));
  CHECK(mentions(error_of("kind = capacity\neta_grid = 0.5\neta_grid = 0.6\n"), "eta_grid"));
  const auto e = error_of("kind = forgetfulness\ntau_p = 0.464\n");
  for (const char* k : {"gamma", "tau", "p", "idle_slots"}) {
    CHECK(mentions(e, std::string("'") + k + "'"));
  }
  CHECK(e.problems().size() >= 4);
  CHECK(mentions(error_of("tau_p = 1\n"), "kind"));
  CHECK(mentions(error_of("kind = optimize\ntau_p = 0.464\ngamma = 0.5\nquantity = both\n"), "quantity"));
  CHECK(mentions(error_of("kind = coherent-sweep\ntau_p = 0.464\ngamma = x\np = 0.4\n"), "gamma"));
}

TEST_CASE("dephasing requires the parameter matching its quantity") {
  CHECK(mentions(error_of("kind = dephasing\ntau_p = 0.464\ngamma = 0.5\nquantity = holevo\np = 0.4\n"), "p_tilde"));
  CHECK_NOTHROW(parse_config("kind = dephasing\ntau_p = 0.464\ngamma = 0.5\nquantity = coherent\np = 0.4\n"));
}

TEST_CASE("override_dt re-validates") {
  auto c = parse_config("kind = appendix-a\ntau_p = 0.464\ngamma = 0.5\ntau = 1\np = 0.4\n");
  override_dt(c, 1e-4);
  CHECK(c.schedule.dt == 1e-4);
  CHECK_THROWS_AS(override_dt(c, -1.0), Error);
}

TEST_CASE("csv round-trip is exact") {
  Table t;
  t.columns = {"a", "b"};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 50; ++i) t.add({u(rng), u(rng) * 1e-12});
  t.add({std::numeric_limits<double>::quiet_NaN(), 0.1}, "error: x; y");
  const Table back = parse_csv(to_csv(t));
  REQUIRE(back.columns == t.columns);
  REQUIRE(back.rows.size() == t.rows.size());
  for (std::size_t i = 0; i + 1 < t.rows.size(); ++i) {
    CHECK(back.rows[i][0] == t.rows[i][0]);
    CHECK(back.rows[i][1] == t.rows[i][1]);
  }
  CHECK(std::isnan(back.rows.back()[0]));
  CHECK(back.status.back() == "error: x; y");
  CHECK(back.values("b").size() == t.rows.size());
  CHECK_THROWS_AS(t.column("zzz"), Error);
}

TEST_CASE("shipped presets all parse") {
  int n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(MEMCHAN_FIGURES_DIR)) {
    if (entry.path().extension() != ".cfg") continue;
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(load_config(entry.path().string()));
    ++n;
  }
  CHECK(n >= 12);
}

TEST_CASE("appendix-a run writes one row and reruns byte-identically") {
  const auto dir = scratch_dir("appendix");
  auto c = load_config(std::string(MEMCHAN_FIGURES_DIR) + "/appendix_a.cfg");
  const auto r = run_and_write(c, dir.string());
  CHECK(r.all_passed());
  const std::string first = read_file((dir / (c.output + ".csv")).string());
  const Table t = parse_csv(first);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.values("margin")[0] >= -1e-9);
  CHECK(std::filesystem::exists(dir / (c.output + ".summary.txt")));
  run_and_write(c, dir.string());
  CHECK(read_file((dir / (c.output + ".csv")).string()) == first);
}

TEST_CASE("forgetfulness csv respects its bound") {
  auto c = parse_config(
      "kind = forgetfulness\ntau_p = 0.464\ngamma = 0.5\ntau = 1\nn_uses = 1\np = 0.4496\nidle_slots = 0, 2, 4\n");
  const auto r = run_experiment(c);
  const auto lhs = r.table.values("lhs"), bound = r.table.values("bound");
  REQUIRE(lhs.size() == 3);
  for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(lhs[i] <= bound[i]);
  CHECK(r.all_passed());
}

TEST_CASE("curves and capacity checks") {
  const auto e = run_experiment(parse_config("kind = eta-curve\ntau_p = 0.685\ngamma_grid = 0, 0.5, 5\n"));
  CHECK(e.all_passed());
  CHECK(e.table.values("eta")[1] == doctest::Approx(0.62).epsilon(0.01));
  const auto c = run_experiment(parse_config("kind = capacity\neta_grid = 0:0.1:1\n"));
  CHECK(c.all_passed());
  CHECK(c.table.rows.size() == 11);
  CHECK_FALSE(c.summary.empty());
}
