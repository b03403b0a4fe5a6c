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

#include <complex>

#include <Eigen/Dense>

#include "nfris/array.hpp"
#include "nfris/geometry.hpp"
#include "nfris/schedule.hpp"

namespace nfris {

using Mat5 = Eigen::Matrix<double, 5, 5>;

struct ChannelGain {
  double beta_r = 1.0;
  double beta_i = 0.0;

  std::complex<double> value() const { return {beta_r, beta_i}; }
};

// Transmit symbol energy (J) and effective noise PSD (W/Hz, noise figure included).
struct SnrScale {
  double es = 1.0;
  double n0 = 1.0;

  double factor() const { return 2.0 * es / n0; }
};

// Covariance of the RIS profiles in the Fisher-information convention X = F* F^T.
//
// Stored either densely or as a factor pair (P, Q) with F F^H = P Q P^H, i.e.
// X = conj(P Q P^H). The factored form keeps FIM evaluation O(M) for
// schedules and beam-basis allocations.
class PrecoderCovariance {
 public:
  // X given directly in the X = F* F^T convention.
  static PrecoderCovariance dense(CMatrix x);
  // X = F* F^T for explicit profiles F (M x T).
  static PrecoderCovariance from_profiles(const CMatrix& f);
  // F F^H = P Q P^H for profiles P (M x K) and a Hermitian K x K weight Q.
  static PrecoderCovariance factored(CMatrix p, CMatrix q);

  int dim() const;
  bool is_dense() const { return dense_; }
  CMatrix to_dense() const;
  double trace() const;
  // B^H X B for an M x n matrix B.
  CMatrix sandwich(const CMatrix& b) const;

 private:
  bool dense_ = true;
  CMatrix x_;
  CMatrix p_;
  CMatrix q_;
};

struct FimResult {
  Mat5 j_sph = Mat5::Zero();
  Mat5 j_car = Mat5::Zero();
  double peb = 0.0;
};

// Everything needed to evaluate FIMs at one UE position.
struct FimContext {
  SteeringBundle bundle;
  ChannelGain beta;
  SnrScale snr;
  JacobianMatrix jac;

  int size() const { return static_cast<int>(bundle.a.size()); }
  // M x 5 matrix [beta a_rho, beta a_theta, beta a_phi, a, j a].
  CMatrix score_basis() const;
};

FimContext make_fim_context(const RisArray& arr, const CartesianPoint& p, ChannelGain beta, SnrScale snr);

// J = (2 Es / N0) Re{B^H X B} with B = [beta a_rho, beta a_theta, beta a_phi, a, j a].
// Throws ShapeError if X and the bundle disagree on M.
Mat5 fim_spherical(const SteeringBundle& bundle, ChannelGain beta, const PrecoderCovariance& x, SnrScale snr);

// J_car = C^T J_sph C.
Mat5 fim_cartesian(const Mat5& j_sph, const JacobianMatrix& c);

// sqrt(tr([J^-1]_{1:3,1:3})). +inf when J is singular or its scaled condition
// number exceeds 1e12. Throws ShapeError for a non-symmetric input.
double peb(const Mat5& j_car);

// Full evaluation (spherical FIM, Cartesian FIM, PEB) for one covariance.
FimResult evaluate_fim(const FimContext& ctx, const PrecoderCovariance& x);

// Sum of per-beam FIMs weighted by the integer allocations.
// Throws ScheduleError if allocations do not add up to total_T or are negative.
FimResult fim_from_schedule(const ProfileSchedule& schedule, const FimContext& ctx);

}  // namespace nfris
