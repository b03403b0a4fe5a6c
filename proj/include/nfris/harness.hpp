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

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "nfris/scenario.hpp"

namespace nfris {

// A design evaluated by the sweep. Every design is evaluated at the same total
// energy tr(X) = M * cfg.T so curves are directly comparable.
struct DesignSpec {
  enum class Kind {
    OptimalFull,          // "opt_full"
    OptimalDiag,          // "opt_diag"
    OptimizeThenConstrain,// "otc"
    ConstrainThenOptimize,// "cto"
    TimeDivision,         // "td:<T>"
    Random,               // "random:<T>"
    Directional,          // "dir:<radius>"
  };
  Kind kind = Kind::OptimalFull;
  int T = 0;
  double radius = 0.0;

  std::string name() const;
};

// Throws std::invalid_argument for an unknown design string.
DesignSpec parse_design(const std::string& text);
std::vector<DesignSpec> parse_designs(const std::string& comma_list);

struct SweepRow {
  double distance = 0.0;  // y-coordinate of the UE at (1, d, 1)
  double range = 0.0;     // |p|
  std::string design;
  double peb = 0.0;
  std::array<double, 4> lambda{};  // NaN when the design has no beam weights
  std::string status;
  double wall_time = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

// UE placed at (1, d, 1) for every distance. Point i uses the RNG seed
// cfg.seed ^ i, so output does not depend on the thread count.
SweepResult run_peb_sweep(const ScenarioConfig& cfg, const std::vector<DesignSpec>& designs,
                          const std::vector<double>& distances, int threads = 1);

enum class CutCoordinate { Rho, Theta, Phi };
CutCoordinate parse_coordinate(const std::string& text);

struct BeamCutRow {
  double value = 0.0;
  std::array<double, 4> gain{};
  bool skipped = false;
};

// Gains |u_i^T a(p)|^2 of the orthonormalised beams at p_ue along one
// spherical coordinate (metres for rho, radians for the angles).
std::vector<BeamCutRow> run_beam_cuts(const ScenarioConfig& cfg, const CartesianPoint& p_ue, CutCoordinate coordinate,
                                      const std::vector<double>& grid);

// CSV with a header row; floats at 9 significant digits, infinities as "inf".
// Wall time is a column only when include_timing is set, so default output is
// byte-identical between runs.
void emit_csv(const SweepResult& result, const std::string& path, bool include_timing = false);
void emit_csv(const std::vector<BeamCutRow>& rows, const std::string& path);

std::string format_number(double v);

// Per-figure tidy files (fig4.csv, fig5.csv, fig5_lambda.csv, fig6.csv) in dir.
void emit_plot_data(const SweepResult& result, const std::string& dir);

}  // namespace nfris
