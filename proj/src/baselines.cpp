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

#include "nfris/baselines.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "nfris/errors.hpp"

namespace nfris {

CMatrix random_profiles(const RisArray& arr, int T, const RandomProfileConfig& cfg) {
  if (T < 1) throw std::invalid_argument("random_profiles: T must be >= 1");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_int_distribution<int> symbol(0, 3);
  static const std::complex<double> kSymbols[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

  CMatrix f(arr.size(), T);
  for (int t = 0; t < T; ++t) {
    for (int m = 0; m < arr.size(); ++m) {
      f(m, t) = cfg.quantized ? kSymbols[symbol(rng)] : std::polar(1.0, phase(rng));
    }
  }
  return f;
}

CMatrix directional_codebook(const RisArray& arr, const CartesianPoint& p, int T, const DirectionalConfig& cfg) {
  if (T < 1) throw std::invalid_argument("directional_codebook: T must be >= 1");
  if (!(cfg.radius >= 0.0)) throw std::invalid_argument("directional_codebook: radius must be >= 0");
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  CMatrix f(arr.size(), T);
  for (int t = 0; t < T; ++t) {
    constexpr int kMaxTries = 100;
    int tries = 0;
    for (;; ++tries) {
      if (tries == kMaxTries) {
        throw DegenerateGeometry("directional_codebook: could not sample a point away from the RIS elements");
      }
      CartesianPoint q = p;
      if (cfg.radius > 0.0) {
        Eigen::Vector3d dir(gauss(rng), gauss(rng), gauss(rng));
        const double n = dir.norm();
        if (n == 0.0) continue;
        const double r = cfg.radius * std::cbrt(unif(rng));
        q = CartesianPoint::from(p.vec() + r * dir / n);
      }
      try {
        f.col(t) = steering(arr, q).conjugate();
        break;
      } catch (const DegenerateGeometry&) {
        if (cfg.radius == 0.0) throw;
      }
    }
  }
  return f;
}

}  // namespace nfris
