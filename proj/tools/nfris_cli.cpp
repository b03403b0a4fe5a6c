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
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nfris/baselines.hpp"
#include "nfris/errors.hpp"
#include "nfris/harness.hpp"

namespace {

using namespace nfris;

ScenarioConfig config_or_default(const std::string& path) {
  return path.empty() ? ScenarioConfig{} : load_config(path);
}

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> v;
  if (steps == 1) return {lo};
  for (int i = 0; i < steps; ++i) v.push_back(lo + (hi - lo) * i / (steps - 1));
  return v;
}

void write_phases(const std::string& path, const RisArray& arr, const std::vector<CVector>& beams) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "element,x,z";
  for (std::size_t i = 0; i < beams.size(); ++i) out << ",phase_" << i + 1;
  out << '\n';
  for (int m = 0; m < arr.size(); ++m) {
    out << m << ',' << format_number(arr.element(m).x) << ',' << format_number(arr.element(m).z);
    for (const auto& b : beams) out << ',' << format_number(std::arg(b[m]));
    out << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localization-optimal RIS phase profile design"};
  app.require_subcommand(1);

  // sweep
  std::string sweep_config, sweep_designs = "opt_full,opt_diag,otc,cto,random:40,dir:0.5,dir:2", sweep_out = "sweep.csv";
  std::string plot_dir;
  std::vector<double> distances;
  long long sweep_seed = -1;
  int threads = 1;
  bool timing = false;
  auto* sweep = app.add_subcommand("sweep", "PEB versus RIS-UE distance for several designs");
  sweep->add_option("--config", sweep_config, "Scenario JSON (defaults if omitted)");
  sweep->add_option("--designs", sweep_designs,
                    "Comma list: opt_full, opt_diag, otc, cto, td:<T>, random:<T>, dir:<radius>");
  sweep->add_option("--out", sweep_out, "Output CSV");
  sweep->add_option("--seed", sweep_seed, "Override the config seed");
  sweep->add_option("--distances", distances, "UE y-coordinates in metres (default 1..15)");
  sweep->add_option("--threads", threads, "Worker threads");
  sweep->add_option("--plot-data", plot_dir, "Directory for per-figure tidy files");
  sweep->add_flag("--timing", timing, "Add a wall-time column");

  // beams
  std::string beams_config, beams_out = "beams.csv", beams_plot;
  std::string coordinate = "theta";
  double grid_min = NAN, grid_max = NAN;
  int grid_steps = 201;
  auto* beams = app.add_subcommand("beams", "Gain cuts of the four orthonormalised beams");
  beams->add_option("--config", beams_config);
  beams->add_option("--coordinate", coordinate)->check(CLI::IsMember({"rho", "theta", "phi"}));
  beams->add_option("--grid-min", grid_min, "Default: UE coordinate minus a span");
  beams->add_option("--grid-max", grid_max, "Default: UE coordinate plus a span");
  beams->add_option("--grid-steps", grid_steps)->check(CLI::PositiveNumber);
  beams->add_option("--out", beams_out);
  beams->add_option("--plot-data", beams_plot, "Directory for fig3_<coordinate>.csv");

  // optimize
  std::string opt_config, opt_out, pipeline = "B";
  auto* optimize = app.add_subcommand("optimize", "Optimal allocation and time-shared schedule at the config UE");
  optimize->add_option("--config", opt_config);
  optimize->add_option("--pipeline", pipeline, "A: optimize then constrain, B: constrain then optimize")
      ->check(CLI::IsMember({"A", "B"}));
  optimize->add_option("--out", opt_out, "CSV of per-element phases of the scheduled beams");

  // baseline
  std::string base_config, kind = "random", base_out;
  int base_T = 0;
  double radius = 0.5;
  long long base_seed = -1;
  bool quantized = false;
  auto* baseline = app.add_subcommand("baseline", "PEB of a random or directional codebook at the config UE");
  baseline->add_option("--config", base_config);
  baseline->add_option("--kind", kind)->check(CLI::IsMember({"random", "directional"}));
  baseline->add_option("--T", base_T, "Number of profiles (default: config T)");
  baseline->add_option("--radius", radius, "Uncertainty ball radius for directional beams (m)");
  baseline->add_option("--seed", base_seed);
  baseline->add_flag("--quantized", quantized, "Random phases from {+1,+j,-1,-j}");
  baseline->add_option("--out", base_out, "CSV of per-element phases");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) {
      ScenarioConfig cfg = config_or_default(sweep_config);
      if (sweep_seed >= 0) cfg.seed = static_cast<std::uint64_t>(sweep_seed);
      if (distances.empty()) distances = linspace(1.0, 15.0, 15);
      const auto result = run_peb_sweep(cfg, parse_designs(sweep_designs), distances, threads);
      emit_csv(result, sweep_out, timing);
      if (!plot_dir.empty()) emit_plot_data(result, plot_dir);
      std::cout << "wrote " << result.rows.size() << " rows to " << sweep_out << '\n';
    } else if (*beams) {
      const ScenarioConfig cfg = config_or_default(beams_config);
      const CutCoordinate c = parse_coordinate(coordinate);
      const SphericalPoint s = cart_to_sph(cfg.p_ue);
      const double center = c == CutCoordinate::Rho ? s.rho : c == CutCoordinate::Theta ? s.theta : s.phi;
      const double span = c == CutCoordinate::Rho ? 0.5 * s.rho : 0.2;
      if (std::isnan(grid_min)) grid_min = center - span;
      if (std::isnan(grid_max)) grid_max = center + span;
      const auto rows = run_beam_cuts(cfg, cfg.p_ue, c, linspace(grid_min, grid_max, grid_steps));
      emit_csv(rows, beams_out);
      if (!beams_plot.empty()) {
        std::filesystem::create_directories(beams_plot);
        emit_csv(rows, (std::filesystem::path(beams_plot) / ("fig3_" + coordinate + ".csv")).string());
      }
      std::cout << "wrote " << rows.size() << " rows to " << beams_out << '\n';
    } else if (*optimize) {
      const ScenarioConfig cfg = config_or_default(opt_config);
      const RisArray arr = cfg.make_array();
      const FimContext ctx = cfg.context_at(arr, cfg.p_ue);
      const BeamBasis basis = build_beam_basis(ctx.bundle, true);
      const SdpSolution full = solve_lambda_sdp(basis, ctx, cfg.T, false, cfg.sdp_settings());
      const SdpSolution diag = solve_lambda_sdp(basis, ctx, cfg.T, true, cfg.sdp_settings());
      const Pipeline pl = pipeline == "A" ? Pipeline::OptimizeThenConstrain : Pipeline::ConstrainThenOptimize;
      const DesignedSchedule design = make_schedule(diag, basis, ctx, pattern_samples(arr, cfg.p_ue, cfg.projection),
                                                    cfg.projection, cfg.T, pl, cfg.sdp_settings());
      const FimResult sched = fim_from_schedule(design.schedule, ctx);

      std::cout << "PEB optimal (full Lambda):     " << format_number(full.peb_at_optimum) << " m\n";
      std::cout << "PEB optimal (diagonal Lambda): " << format_number(diag.peb_at_optimum) << " m\n";
      std::cout << "Lambda (full):\n" << full.allocation.lambda << '\n';
      std::cout << "pipeline " << pipeline << " weights:";
      for (double w : design.weights) std::cout << ' ' << format_number(w);
      std::cout << "\nschedule (T = " << design.schedule.total_T << "):";
      for (int t : design.schedule.allocations) std::cout << ' ' << t;
      std::cout << "\nPEB scheduled: " << format_number(sched.peb) << " m\n";
      if (!opt_out.empty()) {
        write_phases(opt_out, arr, {design.schedule.beams.begin(), design.schedule.beams.end()});
      }
    } else if (*baseline) {
      ScenarioConfig cfg = config_or_default(base_config);
      if (base_seed >= 0) cfg.seed = static_cast<std::uint64_t>(base_seed);
      const int T = base_T > 0 ? base_T : cfg.T;
      const RisArray arr = cfg.make_array();
      const FimContext ctx = cfg.context_at(arr, cfg.p_ue);
      const CMatrix f = kind == "random" ? random_profiles(arr, T, {cfg.seed, quantized})
                                         : directional_codebook(arr, cfg.p_ue, T, {radius, cfg.seed});
      const FimResult r = evaluate_fim(ctx, PrecoderCovariance::from_profiles(f));
      std::cout << kind << " baseline, T = " << T << ": PEB " << format_number(r.peb) << " m\n";
      if (!base_out.empty()) {
        std::vector<CVector> cols;
        for (int t = 0; t < f.cols(); ++t) cols.push_back(f.col(t));
        write_phases(base_out, arr, cols);
      }
    }
  } catch (const nfris::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
