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
#include "nfris/design_opt.hpp"
#include "nfris/fim.hpp"
#include "nfris/schedule.hpp"

namespace nfris {

struct ProjectionParams {
  int n_points = 64;        // pattern samples around the target
  int max_iters = 500;
  double step_shrink = 0.5; // backtracking factor
  double tol = 1e-4;        // relative objective change
  double rho_span = 0.20;   // +-20% in range
  double angle_span_deg = 10.0;
  // 0 keeps continuous phases; 4 snaps to {+1, +j, -1, -j} after projection.
  int quantize_levels = 0;
};

// Steering vectors at the pattern-matching sample points (M x N): coordinate
// cuts through the target along rho, theta and phi.
CMatrix pattern_samples(const RisArray& arr, const CartesianPoint& target, const ProjectionParams& params);

struct ProjectionTrace {
  double initial_objective = 0.0;
  double final_objective = 0.0;
  int iterations = 0;
};

// Unit-modulus beam whose pattern |f^T a(p_n)| matches c |u^T a(p_n)| with
// c = sqrt(M) / |u|. Starts from the phases of u (phase 0 for zero entries) and
// runs projected gradient descent with backtracking. Throws InvalidBeam for u = 0.
CVector project_unit_modulus(const CVector& u, const ProjectionParams& params, const RisArray& arr,
                             const CartesianPoint& target, ProjectionTrace* trace = nullptr);

// Same with precomputed pattern samples.
CVector project_unit_modulus(const CVector& u, const ProjectionParams& params, const CMatrix& samples,
                             ProjectionTrace* trace = nullptr);

// Pattern-matching objective for a candidate beam f.
double pattern_objective(const CVector& f, const CVector& u, const CMatrix& samples);

// Integer time shares with every beam used at least once and sum total_T.
// Throws ScheduleError if total_T < 4 or the weights are invalid.
std::array<int, 4> allocate_time(const std::array<double, 4>& weights, int total_T);

enum class Pipeline {
  OptimizeThenConstrain,  // project the orthonormal optimal beams, keep their weights
  ConstrainThenOptimize,  // project first, then re-solve the allocation on the projected beams
};

struct DesignedSchedule {
  ProfileSchedule schedule;
  std::array<double, 4> weights{};  // continuous relative weights behind the allocation
  SdpSolution solution;             // allocation the weights came from
  BeamBasis projected;              // unit-modulus beams as a basis
};

// Turns a diagonal Lambda solution on the orthonormal basis into a feasible schedule.
DesignedSchedule make_schedule(const SdpSolution& sol, const BeamBasis& basis, const FimContext& ctx,
                               const CMatrix& samples, const ProjectionParams& params, int total_T,
                               Pipeline pipeline, const SdpSettings& settings = {});

// Schedule for new integer budget reusing beams and weights of an existing design.
ProfileSchedule reschedule(const DesignedSchedule& design, int total_T);

}  // namespace nfris
