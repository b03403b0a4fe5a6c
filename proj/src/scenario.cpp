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

#include "nfris/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nfris/errors.hpp"

namespace nfris {

namespace {

constexpr double kSpeedOfLight = 299792458.0;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

bool in_ris_plane(const CartesianPoint& p) { return std::abs(p.y) < 1e-9; }

using nlohmann::json;

double get_number(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string("config field '") + key + "' must be a number");
  return v.get<double>();
}

int get_int(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string("config field '") + key + "' must be an integer");
  return v.get<int>();
}

CartesianPoint get_point(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number()) {
    throw ConfigError(std::string("config field '") + key + "' must be an array of 3 numbers");
  }
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

}  // namespace

double ScenarioConfig::wavelength() const { return kSpeedOfLight / fc; }

double ScenarioConfig::es() const { return db_to_linear(ptx_dbm - 30.0) / bandwidth; }

double ScenarioConfig::n0_linear() const { return db_to_linear(n0_dbm_hz - 30.0) * db_to_linear(noise_figure_db); }

RisArray ScenarioConfig::make_array() const {
  const double lambda = wavelength();
  return build_planar_ris(ris_rows, ris_cols, spacing_over_lambda * lambda, lambda);
}

ChannelGain ScenarioConfig::gain_at(const CartesianPoint& ue) const {
  if (gain_model == GainModel::Explicit) return {beta_r, beta_i};
  const double lambda = wavelength();
  const double four_pi = 4.0 * std::numbers::pi;
  return {lambda * lambda / (four_pi * four_pi * p_bs.norm() * ue.norm()), 0.0};
}

FimContext ScenarioConfig::context_at(const RisArray& arr, const CartesianPoint& ue) const {
  return make_fim_context(arr, ue, gain_at(ue), snr());
}

void validate(const ScenarioConfig& c) {
  auto need = [](bool ok, const char* field, const char* what) {
    if (!ok) throw ConfigError(std::string("config field '") + field + "' " + what);
  };
  need(std::isfinite(c.fc) && c.fc > 0.0, "fc", "must be positive");
  need(std::isfinite(c.bandwidth) && c.bandwidth > 0.0, "bandwidth", "must be positive");
  need(std::isfinite(c.n0_dbm_hz), "n0_dbm_hz", "must be finite");
  need(std::isfinite(c.noise_figure_db), "noise_figure_db", "must be finite");
  need(std::isfinite(c.ptx_dbm), "ptx_dbm", "must be finite");
  need(c.T >= 1, "T", "must be >= 1");
  need(c.ris_rows >= 1, "ris_rows", "must be >= 1");
  need(c.ris_cols >= 1, "ris_cols", "must be >= 1");
  need(std::isfinite(c.spacing_over_lambda) && c.spacing_over_lambda > 0.0, "spacing_over_lambda",
       "must be positive");
  need(c.p_bs.vec().allFinite() && !in_ris_plane(c.p_bs), "p_bs", "must be finite and off the RIS plane (y != 0)");
  need(c.p_ue.vec().allFinite() && !in_ris_plane(c.p_ue), "p_ue", "must be finite and off the RIS plane (y != 0)");
  need(c.p_ue.x != 0.0 || c.p_ue.y != 0.0, "p_ue", "must not lie on the z-axis");
  if (c.gain_model == GainModel::Explicit) {
    need(std::isfinite(c.beta_r) && std::isfinite(c.beta_i) && std::hypot(c.beta_r, c.beta_i) > 0.0, "beta_r",
         "and beta_i must give a nonzero explicit gain");
  }
  need(std::isfinite(c.solver_tol) && c.solver_tol > 0.0, "solver_tol", "must be positive");
  need(c.projection.n_points >= 1, "projection_points", "must be >= 1");
  need(c.projection.max_iters >= 0, "projection_max_iters", "must be >= 0");
  need(std::isfinite(c.projection.tol) && c.projection.tol > 0.0, "projection_tol", "must be positive");
  need(c.uncertainty_radius == 0.0, "uncertainty_radius", "is not supported (worst-case design not implemented)");
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig c;
  bool blank = text.find_first_not_of(" \t\r\n") == std::string::npos;
  json j;
  if (!blank) {
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
  } else {
    j = json::object();
  }

  static const std::set<std::string> known = {
      "fc", "bandwidth", "n0_dbm_hz", "noise_figure_db", "ptx_dbm", "T", "ris_rows", "ris_cols",
      "spacing_over_lambda", "p_bs", "p_ue", "gain_model", "beta_r", "beta_i", "seed", "solver_tol",
      "projection_points", "projection_max_iters", "projection_tol", "uncertainty_radius"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ConfigError("config field '" + key + "' is not recognised");
  }

  if (j.contains("fc")) c.fc = get_number(j, "fc");
  if (j.contains("bandwidth")) c.bandwidth = get_number(j, "bandwidth");
  if (j.contains("n0_dbm_hz")) c.n0_dbm_hz = get_number(j, "n0_dbm_hz");
  if (j.contains("noise_figure_db")) c.noise_figure_db = get_number(j, "noise_figure_db");
  if (j.contains("ptx_dbm")) c.ptx_dbm = get_number(j, "ptx_dbm");
  if (j.contains("T")) c.T = get_int(j, "T");
  if (j.contains("ris_rows")) c.ris_rows = get_int(j, "ris_rows");
  if (j.contains("ris_cols")) c.ris_cols = get_int(j, "ris_cols");
  if (j.contains("spacing_over_lambda")) c.spacing_over_lambda = get_number(j, "spacing_over_lambda");
  if (j.contains("p_bs")) c.p_bs = get_point(j, "p_bs");
  if (j.contains("p_ue")) c.p_ue = get_point(j, "p_ue");
  if (j.contains("gain_model")) {
    const auto& v = j.at("gain_model");
    const std::string s = v.is_string() ? v.get<std::string>() : "";
    if (s == "free_space_cascaded") c.gain_model = GainModel::FreeSpaceCascaded;
    else if (s == "explicit") c.gain_model = GainModel::Explicit;
    else throw ConfigError("config field 'gain_model' must be \"free_space_cascaded\" or \"explicit\"");
  }
  if (j.contains("beta_r")) c.beta_r = get_number(j, "beta_r");
  if (j.contains("beta_i")) c.beta_i = get_number(j, "beta_i");
  if (j.contains("seed")) {
    const auto& v = j.at("seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw ConfigError("config field 'seed' must be a nonnegative integer");
    }
    c.seed = v.get<std::uint64_t>();
  }
  if (j.contains("solver_tol")) c.solver_tol = get_number(j, "solver_tol");
  if (j.contains("projection_points")) c.projection.n_points = get_int(j, "projection_points");
  if (j.contains("projection_max_iters")) c.projection.max_iters = get_int(j, "projection_max_iters");
  if (j.contains("projection_tol")) c.projection.tol = get_number(j, "projection_tol");
  if (j.contains("uncertainty_radius")) c.uncertainty_radius = get_number(j, "uncertainty_radius");

  validate(c);
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace nfris
