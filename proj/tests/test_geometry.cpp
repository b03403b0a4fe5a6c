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

#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "nfris/errors.hpp"
#include "nfris/geometry.hpp"
#include "oracles.hpp"

using namespace nfris;
using doctest::Approx;

TEST_CASE("cart_to_sph on axis and diagonal points") {
  auto s = cart_to_sph({1, 0, 0});
  CHECK(s.rho == Approx(1.0));
  CHECK(s.theta == Approx(0.0));
  CHECK(s.phi == Approx(std::numbers::pi / 2));

  s = cart_to_sph({0, 0, 1});
  CHECK(s.rho == Approx(1.0));
  CHECK(s.theta == 0.0);
  CHECK(s.phi == Approx(0.0));

  s = cart_to_sph({1, 1, 1});
  CHECK(s.rho == Approx(std::sqrt(3.0)));
  CHECK(s.theta == Approx(std::numbers::pi / 4));
  CHECK(s.phi == Approx(std::acos(1 / std::sqrt(3.0))));
}

TEST_CASE("cart_to_sph rejects the origin") { CHECK_THROWS_AS(cart_to_sph({0, 0, 0}), DegenerateGeometry); }

TEST_CASE("sph_to_cart reference points") {
  auto p = sph_to_cart({1, 0, std::numbers::pi / 2});
  CHECK(p.x == Approx(1.0));
  CHECK(std::abs(p.y) < 1e-15);
  CHECK(std::abs(p.z) < 1e-15);

  p = sph_to_cart({2, std::numbers::pi / 2, std::numbers::pi / 2});
  CHECK(std::abs(p.x) < 1e-15);
  CHECK(p.y == Approx(2.0));

  p = sph_to_cart({std::sqrt(3.0), std::numbers::pi / 4, std::acos(1 / std::sqrt(3.0))});
  CHECK(p.x == Approx(1.0));
  CHECK(p.y == Approx(1.0));
  CHECK(p.z == Approx(1.0));
}

TEST_CASE("round trip off the z-axis") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int i = 0; i < 1000; ++i) {
    CartesianPoint p{u(rng), u(rng), u(rng)};
    if (std::hypot(p.x, p.y) < 1e-3) continue;
    const CartesianPoint q = sph_to_cart(cart_to_sph(p));
    CHECK((q.vec() - p.vec()).norm() <= 1e-12 * p.norm());
  }
}

TEST_CASE("jacobian on the x unit point") {
  const JacobianMatrix c = jacobian({1, 0, 0});
  JacobianMatrix expect = JacobianMatrix::Zero();
  expect(0, 0) = 1;
  expect(1, 1) = 1;
  expect(2, 2) = -1;
  expect(3, 3) = 1;
  expect(4, 4) = 1;
  CHECK((c - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("jacobian on the z-axis is degenerate") { CHECK_THROWS_AS(jacobian({0, 0, 5}), DegenerateGeometry); }

namespace {

// Central differences of an independent spherical conversion, step h.
JacobianMatrix fd_jacobian(const CartesianPoint& p, double h) {
  JacobianMatrix c = JacobianMatrix::Identity();
  const double base[3] = {p.x, p.y, p.z};
  for (int col = 0; col < 3; ++col) {
    double lo[3] = {base[0], base[1], base[2]}, hi[3] = {base[0], base[1], base[2]};
    lo[col] -= h;
    hi[col] += h;
    const auto s1 = oracle::to_sph(hi[0], hi[1], hi[2]);
    const auto s0 = oracle::to_sph(lo[0], lo[1], lo[2]);
    c(0, col) = static_cast<double>((s1.rho - s0.rho) / (2 * h));
    c(1, col) = static_cast<double>((s1.theta - s0.theta) / (2 * h));
    c(2, col) = static_cast<double>((s1.phi - s0.phi) / (2 * h));
  }
  return c;
}

bool entrywise_close(const JacobianMatrix& a, const JacobianMatrix& ref, double rel) {
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      if (std::abs(a(i, j) - ref(i, j)) > rel * std::abs(ref(i, j)) + 1e-9) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("jacobian matches central differences at (1,2,1)") {
  const CartesianPoint p{1, 2, 1};
  CHECK(entrywise_close(jacobian(p), fd_jacobian(p, 1e-6), 1e-6));
}

TEST_CASE("jacobian matches central differences at random points") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-15.0, 15.0);
  int checked = 0;
  while (checked < 200) {
    CartesianPoint p{u(rng), u(rng), u(rng)};
    if (p.x * p.x + p.y * p.y <= 1e-3) continue;
    // keep away from the theta branch cut where differences wrap
    if (p.x < 0 && std::abs(p.y) < 1e-2) continue;
    const double h = 1e-6 * std::max(1.0, p.norm());
    INFO("p = (" << p.x << ", " << p.y << ", " << p.z << ")");
    CHECK(entrywise_close(jacobian(p), fd_jacobian(p, h), 1e-6));
    ++checked;
  }
}

TEST_CASE("jacobian block structure") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 50; ++i) {
    CartesianPoint p{u(rng), u(rng), u(rng)};
    const JacobianMatrix c = jacobian(p);
    CHECK(c.block<2, 3>(3, 0).isZero(0.0));
    CHECK(c.block<3, 2>(0, 3).isZero(0.0));
    CHECK(c.block<2, 2>(3, 3) == Eigen::Matrix2d::Identity());
  }
}
