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

#include <vector>

#include <Eigen/Dense>

#include "nfris/geometry.hpp"

namespace nfris {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Planar reflective surface lying in the y = 0 plane, phase center at the origin.
class RisArray {
 public:
  // Throws std::invalid_argument if the list is empty, an element leaves the
  // y = 0 plane, or the wavelength is not positive.
  RisArray(std::vector<CartesianPoint> elements, double wavelength);

  int size() const { return static_cast<int>(elements_.size()); }
  const CartesianPoint& element(int m) const { return elements_[static_cast<std::size_t>(m)]; }
  const std::vector<CartesianPoint>& elements() const { return elements_; }
  double wavelength() const { return wavelength_; }
  double wavenumber() const;
  CartesianPoint phase_center() const { return {}; }

  // Largest distance of any element from the phase center.
  double max_extent() const;

 private:
  std::vector<CartesianPoint> elements_;
  double wavelength_;
};

// Uniform rows x cols grid in the xz-plane centred on the origin.
// Element (i, j) sits at x = (j - (cols-1)/2) * spacing, z = (i - (rows-1)/2) * spacing.
RisArray build_planar_ris(int rows, int cols, double spacing, double wavelength);

// Steering vector and its derivatives w.r.t. (rho, theta, phi) of the UE.
struct SteeringBundle {
  CVector a;
  CVector d_rho;
  CVector d_theta;
  CVector d_phi;
  SphericalPoint at_position;
};

// Near-field response [a(p)]_m = exp(-j k (|p - p_m| - |p|)).
// Throws DegenerateGeometry if p coincides with an element.
CVector steering(const RisArray& arr, const CartesianPoint& p);

// Closed-form derivative beams. Each entry is (-j k) g_m [a(p)]_m with a real
// factor g_m obtained from the element's spherical coordinates.
SteeringBundle steering_derivatives(const RisArray& arr, const CartesianPoint& p);

// Central differences of steering() in spherical coordinates with an absolute
// step h (metres for rho, radians for the angles). Test oracle only.
SteeringBundle fd_steering_derivatives(const RisArray& arr, const CartesianPoint& p, double h);

}  // namespace nfris
