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

#include "nfris/array.hpp"

namespace nfris {

struct RandomProfileConfig {
  std::uint64_t seed = 0;
  bool quantized = false;  // draw from {+1, +j, -1, -j} instead of continuous phases
};

struct DirectionalConfig {
  double radius = 0.0;  // metres
  std::uint64_t seed = 0;
};

// M x T matrix of i.i.d. unit-modulus entries, deterministic per seed.
CMatrix random_profiles(const RisArray& arr, int T, const RandomProfileConfig& cfg);

// Column t phase-aligns the reflection toward a point drawn uniformly from the
// ball of the given radius around p: f_t = a*(p_t).
CMatrix directional_codebook(const RisArray& arr, const CartesianPoint& p, int T, const DirectionalConfig& cfg);

}  // namespace nfris
