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

#include "nfris/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nfris/baselines.hpp"
#include "nfris/errors.hpp"

namespace nfris {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

const char* status_name(SolverStatus s) {
  switch (s) {
    case SolverStatus::Optimal: return "optimal";
    case SolverStatus::Inaccurate: return "inaccurate";
    case SolverStatus::Infeasible: return "infeasible";
  }
  return "unknown";
}

std::array<double, 4> diagonal_of(const CMatrix& lambda) {
  return {lambda(0, 0).real(), lambda(1, 1).real(), lambda(2, 2).real(), lambda(3, 3).real()};
}

// Lazily computed quantities shared by the designs at one UE position.
class PointEvaluator {
 public:
  PointEvaluator(const ScenarioConfig& cfg, const RisArray& arr, CartesianPoint p, std::uint64_t seed)
      : cfg_(cfg), arr_(arr), p_(p), seed_(seed) {}

  SweepRow evaluate(const DesignSpec& d) {
    SweepRow row;
    row.design = d.name();
    row.lambda = {kNaN, kNaN, kNaN, kNaN};
    row.status = "ok";
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(d, row);
    } catch (const std::exception& e) {
      row.peb = std::numeric_limits<double>::infinity();
      row.status = std::string("error: ") + e.what();
    }
    row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
  }

 private:
  const FimContext& ctx() {
    if (!ctx_) ctx_ = cfg_.context_at(arr_, p_);
    return *ctx_;
  }
  const BeamBasis& basis() {
    if (!basis_) basis_ = build_beam_basis(ctx().bundle, true);
    return *basis_;
  }
  const SdpSolution& full() {
    if (!full_) full_ = solve_lambda_sdp(basis(), ctx(), cfg_.T, false, cfg_.sdp_settings());
    return *full_;
  }
  const SdpSolution& diag() {
    if (!diag_) diag_ = solve_lambda_sdp(basis(), ctx(), cfg_.T, true, cfg_.sdp_settings());
    return *diag_;
  }
  const DesignedSchedule& constrained() {
    if (!cto_) {
      const CMatrix samples = pattern_samples(arr_, p_, cfg_.projection);
      cto_ = make_schedule(diag(), basis(), ctx(), samples, cfg_.projection, std::max(cfg_.T, 4),
                           Pipeline::ConstrainThenOptimize, cfg_.sdp_settings());
    }
    return *cto_;
  }

  static std::string solver_status(const SdpSolution& s) { return status_name(s.status); }

  void run(const DesignSpec& d, SweepRow& row) {
    using K = DesignSpec::Kind;
    const double energy_T = cfg_.T;
    switch (d.kind) {
      case K::OptimalFull:
        row.peb = full().peb_at_optimum;
        row.lambda = diagonal_of(full().allocation.lambda);
        row.status = solver_status(full());
        return;
      case K::OptimalDiag:
        row.peb = diag().peb_at_optimum;
        row.lambda = diagonal_of(diag().allocation.lambda);
        row.status = solver_status(diag());
        return;
      case K::OptimizeThenConstrain: {
        const auto& beams = constrained().projected;
        const CMatrix w = diag().allocation.lambda.diagonal().real().cast<std::complex<double>>().asDiagonal();
        row.peb = evaluate_fim(ctx(), PrecoderCovariance::factored(beams.U, w)).peb;
        row.lambda = diagonal_of(diag().allocation.lambda);
        row.status = solver_status(diag());
        return;
      }
      case K::ConstrainThenOptimize:
        row.peb = constrained().solution.peb_at_optimum;
        row.lambda = diagonal_of(constrained().solution.allocation.lambda);
        row.status = solver_status(constrained().solution);
        return;
      case K::TimeDivision: {
        const ProfileSchedule s = reschedule(constrained(), d.T);
        CMatrix p(ctx().size(), 4);
        CMatrix q = CMatrix::Zero(4, 4);
        for (int i = 0; i < 4; ++i) {
          p.col(i) = s.beams[static_cast<std::size_t>(i)];
          q(i, i) = s.allocations[static_cast<std::size_t>(i)] * energy_T / d.T;
          row.lambda[static_cast<std::size_t>(i)] = q(i, i).real();
        }
        row.peb = evaluate_fim(ctx(), PrecoderCovariance::factored(std::move(p), std::move(q))).peb;
        return;
      }
      case K::Random: {
        const CMatrix f = random_profiles(arr_, d.T, {design_seed(d), false});
        const CMatrix q = CMatrix::Identity(d.T, d.T) * (energy_T / d.T);
        row.peb = evaluate_fim(ctx(), PrecoderCovariance::factored(f, q)).peb;
        return;
      }
      case K::Directional: {
        const CMatrix f = directional_codebook(arr_, p_, cfg_.T, {d.radius, design_seed(d)});
        row.peb = evaluate_fim(ctx(), PrecoderCovariance::from_profiles(f)).peb;
        return;
      }
    }
  }

  std::uint64_t design_seed(const DesignSpec& d) const { return splitmix64(seed_ ^ fnv1a(d.name())); }

  const ScenarioConfig& cfg_;
  const RisArray& arr_;
  CartesianPoint p_;
  std::uint64_t seed_;
  std::optional<FimContext> ctx_;
  std::optional<BeamBasis> basis_;
  std::optional<SdpSolution> full_;
  std::optional<SdpSolution> diag_;
  std::optional<DesignedSchedule> cto_;
};

std::string format_lambda(double v) { return std::isnan(v) ? "nan" : format_number(v); }

void open_or_throw(std::ofstream& out, const std::string& path) {
  out.open(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

}  // namespace

std::string DesignSpec::name() const {
  switch (kind) {
    case Kind::OptimalFull: return "opt_full";
    case Kind::OptimalDiag: return "opt_diag";
    case Kind::OptimizeThenConstrain: return "otc";
    case Kind::ConstrainThenOptimize: return "cto";
    case Kind::TimeDivision: return "td:" + std::to_string(T);
    case Kind::Random: return "random:" + std::to_string(T);
    case Kind::Directional: return "dir:" + format_number(radius);
  }
  return "unknown";
}

DesignSpec parse_design(const std::string& text) {
  using K = DesignSpec::Kind;
  DesignSpec d;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto parse_int = [&](int min) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size() || v < min) throw ConfigError("bad design parameter in '" + text + "'");
    return v;
  };
  if (head == "opt_full" && arg.empty()) d.kind = K::OptimalFull;
  else if (head == "opt_diag" && arg.empty()) d.kind = K::OptimalDiag;
  else if (head == "otc" && arg.empty()) d.kind = K::OptimizeThenConstrain;
  else if (head == "cto" && arg.empty()) d.kind = K::ConstrainThenOptimize;
  else if (head == "td") {
    d.kind = K::TimeDivision;
    d.T = parse_int(4);
  } else if (head == "random") {
    d.kind = K::Random;
    d.T = parse_int(1);
  } else if (head == "dir") {
    d.kind = K::Directional;
    std::size_t used = 0;
    try {
      d.radius = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size() || !(d.radius >= 0.0)) {
      throw ConfigError("bad radius in design '" + text + "'");
    }
  } else {
    throw ConfigError("unknown design '" + text + "'");
  }
  return d;
}

std::vector<DesignSpec> parse_designs(const std::string& comma_list) {
  std::vector<DesignSpec> out;
  std::stringstream ss(comma_list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = item.find_last_not_of(" \t");
    out.push_back(parse_design(item.substr(first, last - first + 1)));
  }
  return out;
}

SweepResult run_peb_sweep(const ScenarioConfig& cfg, const std::vector<DesignSpec>& designs,
                          const std::vector<double>& distances, int threads) {
  validate(cfg);
  const RisArray arr = cfg.make_array();
  std::vector<std::vector<SweepRow>> per_point(distances.size());

  auto work = [&](std::size_t i) {
    const CartesianPoint p{1.0, distances[i], 1.0};
    PointEvaluator ev(cfg, arr, p, cfg.seed ^ static_cast<std::uint64_t>(i));
    for (const auto& d : designs) {
      SweepRow row = ev.evaluate(d);
      row.distance = distances[i];
      row.range = p.norm();
      per_point[i].push_back(std::move(row));
    }
  };

  const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(distances.size())));
  if (n_threads == 1) {
    for (std::size_t i = 0; i < distances.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < distances.size(); i = next++) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  SweepResult res;
  for (auto& rows : per_point) {
    for (auto& r : rows) res.rows.push_back(std::move(r));
  }
  return res;
}

CutCoordinate parse_coordinate(const std::string& text) {
  if (text == "rho") return CutCoordinate::Rho;
  if (text == "theta") return CutCoordinate::Theta;
  if (text == "phi") return CutCoordinate::Phi;
  throw ConfigError("coordinate must be rho, theta or phi, got '" + text + "'");
}

std::vector<BeamCutRow> run_beam_cuts(const ScenarioConfig& cfg, const CartesianPoint& p_ue, CutCoordinate coordinate,
                                      const std::vector<double>& grid) {
  const RisArray arr = cfg.make_array();
  const BeamBasis basis = build_beam_basis(steering_derivatives(arr, p_ue), true);
  const SphericalPoint s = cart_to_sph(p_ue);
  std::vector<BeamCutRow> rows;
  rows.reserve(grid.size());
  for (double v : grid) {
    BeamCutRow row;
    row.value = v;
    SphericalPoint q = s;
    if (coordinate == CutCoordinate::Rho) q.rho = v;
    if (coordinate == CutCoordinate::Theta) q.theta = v;
    if (coordinate == CutCoordinate::Phi) q.phi = v;
    try {
      if (!(q.rho > 0.0) || q.phi < 0.0 || q.phi > std::numbers::pi) {
        throw DegenerateGeometry("beam cut point outside the valid spherical domain");
      }
      const CVector a = steering(arr, sph_to_cart(q));
      const Eigen::VectorXcd proj = basis.U.transpose() * a;
      for (int i = 0; i < 4; ++i) row.gain[static_cast<std::size_t>(i)] = std::norm(proj[i]);
    } catch (const DegenerateGeometry&) {
      row.skipped = true;
      row.gain = {kNaN, kNaN, kNaN, kNaN};
    }
    rows.push_back(row);
  }
  return rows;
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void emit_csv(const SweepResult& result, const std::string& path, bool include_timing) {
  std::ofstream out;
  open_or_throw(out, path);
  out << "distance,range,design,peb,lambda1,lambda2,lambda3,lambda4,status";
  if (include_timing) out << ",wall_time_s";
  out << '\n';
  for (const auto& r : result.rows) {
    out << format_number(r.distance) << ',' << format_number(r.range) << ',' << csv_escape(r.design) << ','
        << format_number(r.peb);
    for (double l : r.lambda) out << ',' << format_lambda(l);
    out << ',' << csv_escape(r.status);
    if (include_timing) out << ',' << format_number(r.wall_time);
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

void emit_csv(const std::vector<BeamCutRow>& rows, const std::string& path) {
  std::ofstream out;
  open_or_throw(out, path);
  out << "value,gain_directional,gain_rho,gain_theta,gain_phi,skipped\n";
  for (const auto& r : rows) {
    out << format_number(r.value);
    for (double g : r.gain) out << ',' << format_number(g);
    out << ',' << (r.skipped ? 1 : 0) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

void emit_plot_data(const SweepResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  struct Fig {
    const char* file;
    bool (*keep)(const std::string&);
  };
  const Fig figs[] = {
      {"fig4.csv", [](const std::string& d) {
         return d == "opt_full" || d.rfind("random:", 0) == 0 || d.rfind("dir:", 0) == 0;
       }},
      {"fig5.csv", [](const std::string& d) { return d == "opt_full" || d == "opt_diag" || d == "otc" || d == "cto"; }},
      {"fig6.csv", [](const std::string& d) { return d == "opt_diag" || d == "cto" || d.rfind("td:", 0) == 0; }},
  };
  for (const auto& f : figs) {
    std::ofstream out;
    open_or_throw(out, (std::filesystem::path(dir) / f.file).string());
    out << "distance,design,peb\n";
    for (const auto& r : result.rows) {
      if (f.keep(r.design)) out << format_number(r.distance) << ',' << r.design << ',' << format_number(r.peb) << '\n';
    }
  }
  std::ofstream out;
  open_or_throw(out, (std::filesystem::path(dir) / "fig5_lambda.csv").string());
  out << "distance,lambda_directional,lambda_rho,lambda_theta,lambda_phi\n";
  for (const auto& r : result.rows) {
    if (r.design != "opt_diag") continue;
    out << format_number(r.distance);
    for (double l : r.lambda) out << ',' << format_lambda(l);
    out << '\n';
  }
}

}  // namespace nfris
