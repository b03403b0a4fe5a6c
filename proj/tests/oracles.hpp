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

// Reference implementations used only by the tests. They share no code with
// the library beyond the public types.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "nfris/array.hpp"
#include "nfris/fim.hpp"

namespace oracle {

using ld = long double;
using cld = std::complex<ld>;
using nfris::CartesianPoint;
using nfris::CMatrix;
using nfris::CVector;
using nfris::Mat5;
using nfris::RisArray;

struct Sph {
  ld rho, theta, phi;
};

inline CartesianPoint to_cart(const Sph& s) {
  return {static_cast<double>(s.rho * std::sin(s.phi) * std::cos(s.theta)),
          static_cast<double>(s.rho * std::sin(s.phi) * std::sin(s.theta)),
          static_cast<double>(s.rho * std::cos(s.phi))};
}

inline Sph to_sph(ld x, ld y, ld z) {
  const ld r = std::sqrt(x * x + y * y + z * z);
  return {r, std::atan2(y, x), std::acos(z / r)};
}

// Steering vector by the textbook path-difference formula in long double.
inline std::vector<cld> steer_ld(const RisArray& arr, ld x, ld y, ld z) {
  const ld k = 2.0L * 3.14159265358979323846264338327950288L / arr.wavelength();
  const ld pn = std::sqrt(x * x + y * y + z * z);
  std::vector<cld> a(static_cast<std::size_t>(arr.size()));
  for (int m = 0; m < arr.size(); ++m) {
    const auto& e = arr.element(m);
    const ld dx = x - e.x, dy = y - e.y, dz = z - e.z;
    const ld d = std::sqrt(dx * dx + dy * dy + dz * dz);
    a[static_cast<std::size_t>(m)] = std::polar(1.0L, -k * (d - pn));
  }
  return a;
}

inline std::vector<cld> steer_sph(const RisArray& arr, const Sph& s) {
  return steer_ld(arr, s.rho * std::sin(s.phi) * std::cos(s.theta), s.rho * std::sin(s.phi) * std::sin(s.theta),
                  s.rho * std::cos(s.phi));
}

inline CVector to_cvec(const std::vector<cld>& v) {
  CVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = {static_cast<double>(v[i].real()), static_cast<double>(v[i].imag())};
  }
  return out;
}

// Central differences of the steering vector along rho, theta, phi.
// Steps: h_rel * rho in range, h_rel radians in angle.
inline std::array<CVector, 3> fd_sph(const RisArray& arr, const CartesianPoint& p, ld h_rel) {
  const Sph s = to_sph(p.x, p.y, p.z);
  const ld h[3] = {h_rel * s.rho, h_rel, h_rel};
  std::array<CVector, 3> out;
  for (int c = 0; c < 3; ++c) {
    Sph lo = s, hi = s;
    ld* plo = c == 0 ? &lo.rho : c == 1 ? &lo.theta : &lo.phi;
    ld* phi = c == 0 ? &hi.rho : c == 1 ? &hi.theta : &hi.phi;
    *plo -= h[c];
    *phi += h[c];
    const auto a1 = steer_sph(arr, hi);
    const auto a0 = steer_sph(arr, lo);
    std::vector<cld> d(a1.size());
    for (std::size_t m = 0; m < d.size(); ++m) d[m] = (a1[m] - a0[m]) / (2.0L * h[c]);
    out[static_cast<std::size_t>(c)] = to_cvec(d);
  }
  return out;
}

inline double rel_err(const CVector& a, const CVector& ref) { return (a - ref).norm() / ref.norm(); }

template <class A, class B>
double rel_err_mat(const A& a, const B& ref) {
  return (a - ref).norm() / ref.norm();
}

// FIM over (rho, theta, phi, beta_r, beta_i) assembled transmission by
// transmission from the observation derivatives, no covariance shortcut.
inline Mat5 direct_fim(const nfris::SteeringBundle& b, std::complex<double> beta, const CMatrix& f, double snr) {
  Mat5 j = Mat5::Zero();
  using cd = std::complex<double>;
  for (Eigen::Index t = 0; t < f.cols(); ++t) {
    const CVector ft = f.col(t);
    cd g[5];
    g[0] = beta * (b.d_rho.transpose() * ft)(0);
    g[1] = beta * (b.d_theta.transpose() * ft)(0);
    g[2] = beta * (b.d_phi.transpose() * ft)(0);
    g[3] = (b.a.transpose() * ft)(0);
    g[4] = cd(0.0, 1.0) * g[3];
    for (int r = 0; r < 5; ++r) {
      for (int c = 0; c < 5; ++c) j(r, c) += snr * std::real(std::conj(g[r]) * g[c]);
    }
  }
  return j;
}

// FIM over (x, y, z, beta_r, beta_i) with position derivatives of the mean
// taken by central differences of the long-double steering vector.
inline Mat5 fd_cartesian_fim(const RisArray& arr, const CartesianPoint& p, std::complex<double> beta, const CMatrix& f,
                             double snr, ld h) {
  const Eigen::Index m = f.rows();
  std::array<CVector, 3> da;
  const ld base[3] = {p.x, p.y, p.z};
  for (int c = 0; c < 3; ++c) {
    ld lo[3] = {base[0], base[1], base[2]}, hi[3] = {base[0], base[1], base[2]};
    lo[c] -= h;
    hi[c] += h;
    const auto a1 = steer_ld(arr, hi[0], hi[1], hi[2]);
    const auto a0 = steer_ld(arr, lo[0], lo[1], lo[2]);
    std::vector<cld> d(a1.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (a1[i] - a0[i]) / (2.0L * h);
    da[static_cast<std::size_t>(c)] = to_cvec(d);
  }
  const CVector a = to_cvec(steer_ld(arr, p.x, p.y, p.z));
  (void)m;
  using cd = std::complex<double>;
  Mat5 j = Mat5::Zero();
  for (Eigen::Index t = 0; t < f.cols(); ++t) {
    const CVector ft = f.col(t);
    cd g[5];
    for (int c = 0; c < 3; ++c) g[c] = beta * (da[static_cast<std::size_t>(c)].transpose() * ft)(0);
    g[3] = (a.transpose() * ft)(0);
    g[4] = cd(0.0, 1.0) * g[3];
    for (int r = 0; r < 5; ++r) {
      for (int c = 0; c < 5; ++c) j(r, c) += snr * std::real(std::conj(g[r]) * g[c]);
    }
  }
  return j;
}

inline CMatrix random_phase_profiles(int m, int t, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 2.0 * 3.14159265358979323846);
  CMatrix f(m, t);
  for (int j = 0; j < t; ++j) {
    for (int i = 0; i < m; ++i) f(i, j) = std::polar(1.0, u(rng));
  }
  return f;
}

// Position error bound from a Cartesian FIM by plain inversion.
inline double peb_plain(const Mat5& j) {
  const Mat5 inv = j.inverse();
  return std::sqrt(inv(0, 0) + inv(1, 1) + inv(2, 2));
}

// Random UE with rho in [rmin, rmax], in front of the array (y > 0) and
// away from the z-axis.
inline CartesianPoint random_ue(std::mt19937_64& rng, double rmin, double rmax) {
  std::uniform_real_distribution<double> ur(rmin, rmax), uth(0.2, 3.14159265358979323846 - 0.2), uph(0.3, 2.8);
  Sph s{ur(rng), uth(rng), uph(rng)};
  return to_cart(s);
}

}  // namespace oracle
