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

#include <array>

#include "nfris/array.hpp"
#include "nfris/fim.hpp"
#include "nfris/sdp.hpp"

namespace nfris {

// Columns are profiles in the F F^H convention: conj of
// [a, a_rho, a_theta, a_phi], optionally orthonormalised so U^H U = M I.
struct BeamBasis {
  CMatrix U;
  bool orthonormalized = false;
};

// Throws BasisDegenerate if a column is (numerically) in the span of the
// previous ones during orthonormalisation.
BeamBasis build_beam_basis(const SteeringBundle& bundle, bool orthonormalize);

// Same basis from arbitrary profile columns (e.g. projected unit-modulus beams).
BeamBasis basis_from_profiles(CMatrix profiles);

struct LambdaAllocation {
  CMatrix lambda;  // 4 x 4 Hermitian PSD
  bool diagonal_only = false;
  double budget = 0.0;
};

using SolverStatus = sdp::Status;

struct SdpSolution {
  LambdaAllocation allocation;
  double objective = 0.0;       // sum of the auxiliary bounds u_k
  double peb_at_optimum = 0.0;  // metres
  SolverStatus status = SolverStatus::Infeasible;
};

struct SdpSettings {
  double tol = 1e-8;
};

// Minimise 1^T u s.t. [[J_car, e_k], [e_k^T, u_k]] >= 0 (k = 1..3),
// tr(Lambda) = budget, Lambda >= 0, where J_car is the FIM of F F^H = U Lambda U^H.
SdpSolution solve_lambda_sdp(const BeamBasis& basis, const FimContext& ctx, double budget, bool diagonal_only,
                             const SdpSettings& settings = {});

struct FullXSolution {
  PrecoderCovariance x;   // FIM convention, X = F* F^T
  CMatrix ffh;            // same optimum as F F^H
  double objective = 0.0;
  double peb_at_optimum = 0.0;
  SolverStatus status = SolverStatus::Infeasible;
};

constexpr int kMaxFullXElements = 64;

// Same SDP over the whole M x M covariance with tr(X) = M * budget.
// Throws CapacityError when M exceeds kMaxFullXElements.
FullXSolution solve_full_x_sdp(const FimContext& ctx, double budget, const SdpSettings& settings = {});

// lambda_i / tr(Lambda). Requires a diagonal allocation (std::invalid_argument otherwise).
std::array<double, 4> lambda_to_weights(const SdpSolution& sol);

}  // namespace nfris
