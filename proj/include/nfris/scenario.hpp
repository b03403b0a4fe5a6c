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

#include <cstdint>
#include <string>

#include "nfris/array.hpp"
#include "nfris/design_opt.hpp"
#include "nfris/fim.hpp"
#include "nfris/geometry.hpp"
#include "nfris/profiles.hpp"

namespace nfris {

enum class GainModel { FreeSpaceCascaded, Explicit };

// One experiment: geometry, RF front end and transmission settings.
// Defaults reproduce the canonical indoor 28 GHz scenario.
struct ScenarioConfig {
  double fc = 28e9;               // Hz
  double bandwidth = 120e3;       // Hz
  double n0_dbm_hz = -174.0;
  double noise_figure_db = 8.0;
  double ptx_dbm = 20.0;
  int T = 40;
  int ris_rows = 32;
  int ris_cols = 32;
  double spacing_over_lambda = 0.5;
  CartesianPoint p_bs{5.0, 5.0, 0.0};
  CartesianPoint p_ue{1.0, 2.0, 1.0};
  GainModel gain_model = GainModel::FreeSpaceCascaded;
  double beta_r = 0.0;  // used by GainModel::Explicit
  double beta_i = 0.0;
  std::uint64_t seed = 1;
  double solver_tol = 1e-8;
  ProjectionParams projection;
  // Reserved for worst-case design over a region around the UE; must stay 0.
  double uncertainty_radius = 0.0;

  double wavelength() const;
  double es() const;        // Ptx / W
  double n0_linear() const; // N0 * noise figure, W/Hz
  SnrScale snr() const { return {es(), n0_linear()}; }
  RisArray make_array() const;
  // Free-space cascaded |beta| = lambda^2 / ((4 pi)^2 d_BS d_UE) unless explicit.
  ChannelGain gain_at(const CartesianPoint& ue) const;
  FimContext context_at(const RisArray& arr, const CartesianPoint& ue) const;
  SdpSettings sdp_settings() const { return {solver_tol}; }
};

// Throws ConfigError naming the offending field.
void validate(const ScenarioConfig& cfg);

// Flat JSON document; missing keys keep their defaults, unknown keys are rejected.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);

}  // namespace nfris
