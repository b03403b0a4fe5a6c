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

#include <Eigen/Dense>

namespace nfris {

// Point in the global frame, metres. The RIS phase center is the origin.
struct CartesianPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Eigen::Vector3d vec() const { return {x, y, z}; }
  static CartesianPoint from(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }
  double norm() const { return vec().norm(); }
};

// rho: range (m); theta: azimuth from +x (rad); phi: elevation from +z, in [0, pi].
struct SphericalPoint {
  double rho = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

// d(rho, theta, phi, beta_r, beta_i) / d(x, y, z, beta_r, beta_i).
using JacobianMatrix = Eigen::Matrix<double, 5, 5>;

// Throws DegenerateGeometry at the origin. theta is 0 on the z-axis.
SphericalPoint cart_to_sph(const CartesianPoint& p);

CartesianPoint sph_to_cart(const SphericalPoint& s);

// Analytic Jacobian of the spherical parameters w.r.t. the Cartesian ones.
// Throws DegenerateGeometry on the z-axis where theta is undefined.
JacobianMatrix jacobian(const CartesianPoint& p);

}  // namespace nfris
