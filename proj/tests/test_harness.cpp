// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <doctest.h>

#include "nfris/errors.hpp"
#include "nfris/harness.hpp"

using namespace nfris;
using doctest::Approx;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "nfris_harness_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

ScenarioConfig small_cfg() {
  ScenarioConfig cfg;
  cfg.ris_rows = cfg.ris_cols = 8;
  return cfg;
}

}  // namespace

TEST_CASE("design names round trip") {
  for (const std::string s : {"opt_full", "opt_diag", "otc", "cto", "td:200", "random:40", "dir:0.5", "dir:2"}) {
    CHECK(parse_design(s).name() == s);
  }
  const auto list = parse_designs("opt_full, random:80,dir:2");
  REQUIRE(list.size() == 3);
  CHECK(list[1].kind == DesignSpec::Kind::Random);
  CHECK(list[1].T == 80);
  CHECK(list[2].radius == 2.0);
  for (const std::string bad : {"", "optimal", "td:", "td:2", "random:0", "dir:-1", "dir:x"}) {
    CHECK_THROWS_AS(parse_design(bad), ConfigError);
  }
}

TEST_CASE("single point, single design") {
  const SweepResult r = run_peb_sweep(ScenarioConfig{}, {parse_design("random:40")}, {2.0});
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].distance == 2.0);
  CHECK(r.rows[0].range == Approx(std::sqrt(6.0)));
  CHECK(r.rows[0].design == "random:40");
  CHECK(std::isfinite(r.rows[0].peb));
  CHECK(std::isnan(r.rows[0].lambda[0]));
}

TEST_CASE("sweep completeness and determinism") {
  const ScenarioConfig cfg = small_cfg();
  const auto designs = parse_designs("opt_full,opt_diag,otc,cto,td:40,random:40,dir:0.5");
  const std::vector<double> d = {1, 3, 5};
  const SweepResult a = run_peb_sweep(cfg, designs, d, 1);
  const SweepResult b = run_peb_sweep(cfg, designs, d, 3);
  CHECK(a.rows.size() == designs.size() * d.size());
  std::set<std::pair<double, std::string>> seen;
  for (const auto& row : a.rows) CHECK(seen.insert({row.distance, row.design}).second);

  emit_csv(a, scratch("a.csv").string());
  emit_csv(b, scratch("b.csv").string());
  emit_csv(run_peb_sweep(cfg, designs, d, 1), scratch("c.csv").string());
  CHECK(slurp(scratch("a.csv")) == slurp(scratch("b.csv")));
  CHECK(slurp(scratch("a.csv")) == slurp(scratch("c.csv")));

  ScenarioConfig other = cfg;
  other.seed = cfg.seed + 1;
  emit_csv(run_peb_sweep(other, designs, d, 1), scratch("d.csv").string());
  CHECK(slurp(scratch("a.csv")) != slurp(scratch("d.csv")));
}

TEST_CASE("sweep records per-point failures") {
  // 2 x 2 array with elements at (+-1, 0, +-1): the UE (1, 0, 1) sits on one
  ScenarioConfig cfg;
  cfg.ris_rows = cfg.ris_cols = 2;
  cfg.spacing_over_lambda = 2.0 / cfg.wavelength();
  const SweepResult r = run_peb_sweep(cfg, parse_designs("opt_diag,random:10"), {0.0, 2.0});
  REQUIRE(r.rows.size() == 4);
  for (const auto& row : r.rows) {
    const bool failed = row.status.rfind("error", 0) == 0;
    CHECK(failed == (row.distance == 0.0));
    if (failed) CHECK(std::isinf(row.peb));
  }
}

TEST_CASE("CSV layout") {
  SweepResult empty;
  emit_csv(empty, scratch("empty.csv").string());
  CHECK(slurp(scratch("empty.csv")) == "distance,range,design,peb,lambda1,lambda2,lambda3,lambda4,status\n");
  emit_csv(empty, scratch("empty_t.csv").string(), true);
  CHECK(slurp(scratch("empty_t.csv")) ==
        "distance,range,design,peb,lambda1,lambda2,lambda3,lambda4,status,wall_time_s\n");

  SweepResult one;
  one.rows.push_back({2.5, 2.87228132, "cto", 0.0123456789012, {1.0 / 3.0, 2, 3, 4}, "optimal", 0.1});
  one.rows.push_back({3, 3.3, "random:40", std::numeric_limits<double>::infinity(), {NAN, NAN, NAN, NAN}, "ok", 0.0});
  emit_csv(one, scratch("one.csv").string());
  const auto rows = read_csv(scratch("one.csv"));
  REQUIRE(rows.size() == 3);
  REQUIRE(rows[1].size() == 9);
  CHECK(std::stod(rows[1][0]) == 2.5);
  CHECK(rows[1][2] == "cto");
  CHECK(rows[1][3] == "0.0123456789");
  CHECK(rows[1][4] == "0.333333333");
  CHECK(rows[1][8] == "optimal");
  CHECK(rows[2][3] == "inf");
  CHECK(rows[2][4] == "nan");

  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK_THROWS(emit_csv(one, "/nonexistent_dir/x/y.csv"));
}

TEST_CASE("beam cuts") {
  ScenarioConfig cfg;
  const SphericalPoint s = cart_to_sph(cfg.p_ue);
  const double m = cfg.make_array().size();
  const double m2 = m * m;
  std::map<CutCoordinate, double> slope;
  for (CutCoordinate c : {CutCoordinate::Rho, CutCoordinate::Theta, CutCoordinate::Phi}) {
    const double centre = c == CutCoordinate::Rho ? s.rho : c == CutCoordinate::Theta ? s.theta : s.phi;
    const double h = c == CutCoordinate::Rho ? 1e-3 * s.rho : 1e-3;
    const auto rows = run_beam_cuts(cfg, cfg.p_ue, c, {centre - h, centre, centre + h});
    REQUIRE(rows.size() == 3);
    CHECK_FALSE(rows[1].skipped);
    CHECK(rows[1].gain[0] == Approx(m2).epsilon(1e-6));
    for (int i = 1; i < 4; ++i) CHECK(rows[1].gain[static_cast<std::size_t>(i)] < 1e-9 * m2);
    // curvature of the theta beam around its null, per unit of coordinate
    // change measured as arc length
    const double scale = c == CutCoordinate::Rho ? 1.0 : c == CutCoordinate::Theta ? s.rho * std::sin(s.phi) : s.rho;
    slope[c] = (rows[2].gain[2] + rows[0].gain[2]) / (h * h * scale * scale);
  }
  CHECK(slope[CutCoordinate::Theta] > slope[CutCoordinate::Rho]);
  CHECK(slope[CutCoordinate::Theta] > slope[CutCoordinate::Phi]);
  CHECK_THROWS_AS(parse_coordinate("r"), ConfigError);
}

TEST_CASE("beam cuts skip degenerate points") {
  ScenarioConfig cfg;
  cfg.ris_rows = cfg.ris_cols = 4;
  const auto rows = run_beam_cuts(cfg, cfg.p_ue, CutCoordinate::Rho, {0.0, 0.5});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].skipped);
  CHECK_FALSE(rows[1].skipped);
  emit_csv(rows, scratch("cuts.csv").string());
  const auto csv = read_csv(scratch("cuts.csv"));
  CHECK(csv[0] == std::vector<std::string>{"value", "gain_directional", "gain_rho", "gain_theta", "gain_phi", "skipped"});
  CHECK(csv.size() == 3);
}

TEST_CASE("plot data files") {
  const SweepResult r = run_peb_sweep(small_cfg(), parse_designs("opt_full,opt_diag,cto,td:40,random:40,dir:2"), {1, 2});
  const auto dir = scratch("plots");
  std::filesystem::remove_all(dir);
  emit_plot_data(r, dir.string());
  for (const char* f : {"fig4.csv", "fig5.csv", "fig6.csv", "fig5_lambda.csv"}) {
    CHECK(std::filesystem::exists(dir / f));
  }
}
