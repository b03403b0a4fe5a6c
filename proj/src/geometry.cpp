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

#include "nfris/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "nfris/errors.hpp"

namespace nfris {

SphericalPoint cart_to_sph(const CartesianPoint& p) {
  const double rho = p.norm();
  if (!(rho > 0.0)) {
    throw DegenerateGeometry("cart_to_sph: point at the origin has no direction");
  }
  SphericalPoint s;
  s.rho = rho;
  s.theta = (p.x == 0.0 && p.y == 0.0) ? 0.0 : std::atan2(p.y, p.x);
  s.phi = std::acos(std::clamp(p.z / rho, -1.0, 1.0));
  return s;
}

CartesianPoint sph_to_cart(const SphericalPoint& s) {
  const double sp = std::sin(s.phi);
  return {s.rho * std::cos(s.theta) * sp, s.rho * std::sin(s.theta) * sp, s.rho * std::cos(s.phi)};
}

JacobianMatrix jacobian(const CartesianPoint& p) {
  const double r2xy = p.x * p.x + p.y * p.y;
  if (!(r2xy > 0.0)) {
    throw DegenerateGeometry("jacobian: azimuth undefined on the z-axis");
  }
  const double rxy = std::sqrt(r2xy);
  const double rho2 = r2xy + p.z * p.z;
  const double rho = std::sqrt(rho2);

  JacobianMatrix c = JacobianMatrix::Zero();
  c(0, 0) = p.x / rho;
  c(0, 1) = p.y / rho;
  c(0, 2) = p.z / rho;

  c(1, 0) = -p.y / r2xy;
  c(1, 1) = p.x / r2xy;

  c(2, 0) = p.x * p.z / (rxy * rho2);
  c(2, 1) = p.y * p.z / (rxy * rho2);
  c(2, 2) = -r2xy / (rxy * rho2);

  c(3, 3) = 1.0;
  c(4, 4) = 1.0;
  return c;
}

}  // namespace nfris
