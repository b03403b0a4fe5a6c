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

#include "nfris/fim.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nfris/errors.hpp"

namespace nfris {

PrecoderCovariance PrecoderCovariance::dense(CMatrix x) {
  if (x.rows() != x.cols()) throw ShapeError("PrecoderCovariance: X must be square");
  PrecoderCovariance c;
  c.dense_ = true;
  c.x_ = std::move(x);
  return c;
}

PrecoderCovariance PrecoderCovariance::from_profiles(const CMatrix& f) {
  return factored(f, CMatrix::Identity(f.cols(), f.cols()));
}

PrecoderCovariance PrecoderCovariance::factored(CMatrix p, CMatrix q) {
  if (q.rows() != q.cols() || q.rows() != p.cols()) {
    throw ShapeError("PrecoderCovariance: weight must be K x K for K profiles");
  }
  PrecoderCovariance c;
  c.dense_ = false;
  c.p_ = std::move(p);
  c.q_ = std::move(q);
  return c;
}

int PrecoderCovariance::dim() const { return static_cast<int>(dense_ ? x_.rows() : p_.rows()); }

CMatrix PrecoderCovariance::to_dense() const {
  if (dense_) return x_;
  return (p_ * q_ * p_.adjoint()).conjugate();
}

double PrecoderCovariance::trace() const {
  if (dense_) return x_.trace().real();
  return (q_ * (p_.adjoint() * p_)).trace().real();
}

CMatrix PrecoderCovariance::sandwich(const CMatrix& b) const {
  if (b.rows() != dim()) throw ShapeError("PrecoderCovariance: dimension mismatch");
  if (dense_) return b.adjoint() * x_ * b;
  // B^H conj(P Q P^H) B = W^H conj(Q) W with W = P^T B.
  const CMatrix w = p_.transpose() * b;
  return w.adjoint() * q_.conjugate() * w;
}

CMatrix FimContext::score_basis() const {
  const int m = size();
  const std::complex<double> beta_c = beta.value();
  CMatrix b(m, 5);
  b.col(0) = beta_c * bundle.d_rho;
  b.col(1) = beta_c * bundle.d_theta;
  b.col(2) = beta_c * bundle.d_phi;
  b.col(3) = bundle.a;
  b.col(4) = std::complex<double>(0.0, 1.0) * bundle.a;
  return b;
}

FimContext make_fim_context(const RisArray& arr, const CartesianPoint& p, ChannelGain beta, SnrScale snr) {
  return {steering_derivatives(arr, p), beta, snr, jacobian(p)};
}

Mat5 fim_spherical(const SteeringBundle& bundle, ChannelGain beta, const PrecoderCovariance& x, SnrScale snr) {
  if (x.dim() != bundle.a.size()) {
    throw ShapeError("fim_spherical: covariance is " + std::to_string(x.dim()) + " but array has " +
                     std::to_string(bundle.a.size()) + " elements");
  }
  FimContext ctx{bundle, beta, snr, JacobianMatrix::Identity()};
  const CMatrix g = x.sandwich(ctx.score_basis());
  Mat5 j = snr.factor() * g.real();
  // Symmetrise away rounding in the Hermitian product.
  return 0.5 * (j + j.transpose());
}

Mat5 fim_cartesian(const Mat5& j_sph, const JacobianMatrix& c) {
  Mat5 j = c.transpose() * j_sph * c;
  return 0.5 * (j + j.transpose());
}

double peb(const Mat5& j_car) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (!j_car.allFinite()) return kInf;
  const double scale = j_car.norm();
  if ((j_car - j_car.transpose()).norm() > 1e-10 * scale) {
    throw ShapeError("peb: FIM is not symmetric");
  }
  if (scale == 0.0) return kInf;

  Eigen::Matrix<double, 5, 1> d = j_car.diagonal();
  if ((d.array() <= 0.0).any()) return kInf;
  const Eigen::Matrix<double, 5, 1> s = d.cwiseSqrt().cwiseInverse();
  const Mat5 js = s.asDiagonal() * j_car * s.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Mat5> eig(js);
  const auto ev = eig.eigenvalues();
  if (!(ev(0) > 0.0) || ev(4) / ev(0) > 1e12) return kInf;

  const Mat5 inv_s = eig.eigenvectors() * ev.cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
  const Mat5 inv = s.asDiagonal() * inv_s * s.asDiagonal();
  const double tr = inv.topLeftCorner<3, 3>().trace();
  return tr > 0.0 ? std::sqrt(tr) : kInf;
}

FimResult evaluate_fim(const FimContext& ctx, const PrecoderCovariance& x) {
  FimResult r;
  r.j_sph = fim_spherical(ctx.bundle, ctx.beta, x, ctx.snr);
  r.j_car = fim_cartesian(r.j_sph, ctx.jac);
  r.peb = peb(r.j_car);
  return r;
}

FimResult fim_from_schedule(const ProfileSchedule& schedule, const FimContext& ctx) {
  int sum = 0;
  for (int t : schedule.allocations) {
    if (t < 0) throw ScheduleError("fim_from_schedule: negative time allocation");
    sum += t;
  }
  if (sum != schedule.total_T) {
    throw ScheduleError("fim_from_schedule: allocations sum to " + std::to_string(sum) + ", expected " +
                        std::to_string(schedule.total_T));
  }
  const int m = ctx.size();
  CMatrix p(m, 4);
  CMatrix q = CMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    const CVector& f = schedule.beams[static_cast<std::size_t>(i)];
    if (f.size() != m) throw ShapeError("fim_from_schedule: beam length does not match the array");
    if ((f.cwiseAbs().array() - 1.0).abs().maxCoeff() > 1e-9) {
      throw ScheduleError("fim_from_schedule: beam " + std::to_string(i) + " is not unit-modulus");
    }
    p.col(i) = f;
    q(i, i) = schedule.allocations[static_cast<std::size_t>(i)];
  }
  return evaluate_fim(ctx, PrecoderCovariance::factored(std::move(p), std::move(q)));
}

}  // namespace nfris
