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

#include "nfris/array.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "nfris/errors.hpp"

namespace nfris {

namespace {

using cd = std::complex<double>;

// |p - p_m| - |p| without the cancellation of the naive difference.
double path_difference(const Eigen::Vector3d& p, double p_norm, const Eigen::Vector3d& pm) {
  const double dm = (p - pm).norm();
  if (!(dm > 0.0)) {
    throw DegenerateGeometry("steering: UE position coincides with a RIS element");
  }
  return (pm.squaredNorm() - 2.0 * p.dot(pm)) / (dm + p_norm);
}

}  // namespace

RisArray::RisArray(std::vector<CartesianPoint> elements, double wavelength)
    : elements_(std::move(elements)), wavelength_(wavelength) {
  if (elements_.empty()) {
    throw std::invalid_argument("RisArray: at least one element required");
  }
  if (!(wavelength_ > 0.0) || !std::isfinite(wavelength_)) {
    throw std::invalid_argument("RisArray: wavelength must be positive");
  }
  for (const auto& e : elements_) {
    if (e.y != 0.0) {
      throw std::invalid_argument("RisArray: elements must lie in the y = 0 plane");
    }
  }
}

double RisArray::wavenumber() const { return 2.0 * std::numbers::pi / wavelength_; }

double RisArray::max_extent() const {
  double r = 0.0;
  for (const auto& e : elements_) r = std::max(r, e.norm());
  return r;
}

RisArray build_planar_ris(int rows, int cols, double spacing, double wavelength) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("build_planar_ris: rows and cols must be >= 1");
  if (!(spacing > 0.0)) throw std::invalid_argument("build_planar_ris: spacing must be positive");
  std::vector<CartesianPoint> elems;
  elems.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  const double cx = 0.5 * (cols - 1);
  const double cz = 0.5 * (rows - 1);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      elems.push_back({(j - cx) * spacing, 0.0, (i - cz) * spacing});
    }
  }
  return RisArray(std::move(elems), wavelength);
}

CVector steering(const RisArray& arr, const CartesianPoint& p) {
  const Eigen::Vector3d pv = p.vec();
  const double pn = pv.norm();
  const double k = arr.wavenumber();
  CVector a(arr.size());
  for (int m = 0; m < arr.size(); ++m) {
    const double dd = path_difference(pv, pn, arr.element(m).vec());
    a[m] = std::polar(1.0, -k * dd);
  }
  return a;
}

SteeringBundle steering_derivatives(const RisArray& arr, const CartesianPoint& p) {
  const SphericalPoint s = cart_to_sph(p);
  const Eigen::Vector3d pv = p.vec();
  const double k = arr.wavenumber();
  const int n = arr.size();

  SteeringBundle b;
  b.at_position = s;
  b.a.resize(n);
  b.d_rho.resize(n);
  b.d_theta.resize(n);
  b.d_phi.resize(n);

  const double sp = std::sin(s.phi);
  const double cp = std::cos(s.phi);
  const cd mjk(0.0, -k);

  for (int m = 0; m < n; ++m) {
    const CartesianPoint& e = arr.element(m);
    const Eigen::Vector3d pm = e.vec();
    const double dd = path_difference(pv, s.rho, pm);
    const cd am = std::polar(1.0, -k * dd);
    b.a[m] = am;

    const double rho_m = pm.norm();
    if (rho_m == 0.0) {
      // Element at the phase center: path difference is identically zero.
      b.a[m] = 1.0;
      b.d_rho[m] = b.d_theta[m] = b.d_phi[m] = 0.0;
      continue;
    }
    // Elements lie in y = 0, so the azimuth is 0 (x > 0) or pi (x < 0).
    const double theta_m = e.x < 0.0 ? std::numbers::pi : 0.0;
    const double phi_m = std::acos(std::clamp(e.z / rho_m, -1.0, 1.0));
    const double spm = std::sin(phi_m);
    const double cpm = std::cos(phi_m);
    const double dth = s.theta - theta_m;

    const double d = (pv - pm).norm();
    const double cos_angle = sp * spm * std::cos(dth) + cp * cpm;
    const double g_rho = (s.rho - rho_m * cos_angle) / d - 1.0;
    const double g_theta = s.rho * rho_m * sp * spm * std::sin(dth) / d;
    const double g_phi = -s.rho * rho_m * (cp * spm * std::cos(dth) - sp * cpm) / d;

    b.d_rho[m] = mjk * g_rho * am;
    b.d_theta[m] = mjk * g_theta * am;
    b.d_phi[m] = mjk * g_phi * am;
  }
  return b;
}

SteeringBundle fd_steering_derivatives(const RisArray& arr, const CartesianPoint& p, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw InvalidStep("fd_steering_derivatives: step must be positive and finite");
  }
  const SphericalPoint s = cart_to_sph(p);
  auto eval = [&](double dr, double dt, double dp) {
    return steering(arr, sph_to_cart({s.rho + dr, s.theta + dt, s.phi + dp}));
  };
  SteeringBundle b;
  b.at_position = s;
  b.a = steering(arr, p);
  b.d_rho = (eval(h, 0, 0) - eval(-h, 0, 0)) / (2.0 * h);
  b.d_theta = (eval(0, h, 0) - eval(0, -h, 0)) / (2.0 * h);
  b.d_phi = (eval(0, 0, h) - eval(0, 0, -h)) / (2.0 * h);
  return b;
}

}  // namespace nfris
