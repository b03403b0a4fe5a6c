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

#include "nfris/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "nfris/errors.hpp"

namespace nfris {

namespace {

using cd = std::complex<double>;

Eigen::VectorXd pattern_targets(const CVector& u, const CMatrix& samples) {
  const double c = std::sqrt(static_cast<double>(u.size())) / u.norm();
  return c * (samples.transpose() * u).cwiseAbs();
}

double objective_from(const CVector& f, const Eigen::VectorXd& targets, const CMatrix& samples) {
  return ((samples.transpose() * f).cwiseAbs() - targets).squaredNorm();
}

CVector unit_phases(const CVector& v) {
  CVector f(v.size());
  for (Eigen::Index m = 0; m < v.size(); ++m) {
    f[m] = v[m] == cd(0.0) ? cd(1.0) : v[m] / std::abs(v[m]);
  }
  return f;
}

}  // namespace

CMatrix pattern_samples(const RisArray& arr, const CartesianPoint& target, const ProjectionParams& params) {
  if (params.n_points < 1) throw std::invalid_argument("pattern_samples: n_points must be >= 1");
  const SphericalPoint s = cart_to_sph(target);
  const double span = params.angle_span_deg * std::numbers::pi / 180.0;
  CMatrix out(arr.size(), params.n_points);
  int col = 0;
  for (int cut = 0; cut < 3; ++cut) {
    const int count = params.n_points / 3 + (cut < params.n_points % 3 ? 1 : 0);
    for (int j = 0; j < count; ++j) {
      const double t = count == 1 ? 0.0 : -1.0 + 2.0 * j / (count - 1);
      SphericalPoint q = s;
      if (cut == 0) q.rho = s.rho * (1.0 + params.rho_span * t);
      if (cut == 1) q.theta = s.theta + span * t;
      if (cut == 2) q.phi = std::clamp(s.phi + span * t, 0.0, std::numbers::pi);
      out.col(col++) = steering(arr, sph_to_cart(q));
    }
  }
  return out;
}

double pattern_objective(const CVector& f, const CVector& u, const CMatrix& samples) {
  return objective_from(f, pattern_targets(u, samples), samples);
}

CVector project_unit_modulus(const CVector& u, const ProjectionParams& params, const RisArray& arr,
                             const CartesianPoint& target, ProjectionTrace* trace) {
  return project_unit_modulus(u, params, pattern_samples(arr, target, params), trace);
}

CVector project_unit_modulus(const CVector& u, const ProjectionParams& params, const CMatrix& samples,
                             ProjectionTrace* trace) {
  if (u.size() == 0 || u.cwiseAbs().maxCoeff() == 0.0) {
    throw InvalidBeam("project_unit_modulus: beam is identically zero");
  }
  if (samples.rows() != u.size()) throw ShapeError("project_unit_modulus: samples do not match beam length");
  if (!(params.tol > 0.0)) throw std::invalid_argument("project_unit_modulus: tol must be positive");

  const Eigen::VectorXd targets = pattern_targets(u, samples);
  CVector f = unit_phases(u);
  double obj = objective_from(f, targets, samples);
  const double initial = obj;

  // Gradient Lipschitz bound of the smooth part; grows/shrinks adaptively.
  double step = 1.0 / std::max(samples.squaredNorm(), 1e-300);
  int it = 0;
  for (; it < params.max_iters && obj > 0.0; ++it) {
    const CVector s = samples.transpose() * f;
    CVector r(s.size());
    for (Eigen::Index n = 0; n < s.size(); ++n) {
      const double mag = std::abs(s[n]);
      r[n] = mag > 0.0 ? (mag - targets[n]) * s[n] / mag : cd(0.0);
    }
    const CVector grad = samples.conjugate() * r;

    bool improved = false;
    CVector trial;
    double trial_obj = obj;
    for (int k = 0; k < 60; ++k) {
      trial = unit_phases(f - step * grad);
      trial_obj = objective_from(trial, targets, samples);
      if (trial_obj < obj) {
        improved = true;
        break;
      }
      step *= params.step_shrink;
    }
    if (!improved) break;
    const double rel = (obj - trial_obj) / obj;
    f = std::move(trial);
    obj = trial_obj;
    step /= params.step_shrink;
    if (rel < params.tol) {
      ++it;
      break;
    }
  }

  if (params.quantize_levels > 0) {
    const double q = 2.0 * std::numbers::pi / params.quantize_levels;
    for (Eigen::Index m = 0; m < f.size(); ++m) {
      f[m] = std::polar(1.0, q * std::round(std::arg(f[m]) / q));
    }
    obj = objective_from(f, targets, samples);
  }

  if (trace) *trace = {initial, obj, it};
  return f;
}

std::array<int, 4> allocate_time(const std::array<double, 4>& weights, int total_T) {
  if (total_T < 4) {
    throw ScheduleError("allocate_time: total_T = " + std::to_string(total_T) +
                        " cannot give each of the 4 beams a slot");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ScheduleError("allocate_time: weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-6) throw ScheduleError("allocate_time: weights must sum to 1");

  std::array<bool, 4> reserved{};
  std::array<int, 4> alloc{};
  for (;;) {
    int n_reserved = 0;
    double active_weight = 0.0;
    for (int i = 0; i < 4; ++i) {
      if (reserved[i]) ++n_reserved;
      else active_weight += weights[i];
    }
    const int pool = total_T - n_reserved;
    std::array<double, 4> remainder{};
    int assigned = 0;
    for (int i = 0; i < 4; ++i) {
      if (reserved[i]) {
        alloc[i] = 1;
        continue;
      }
      const double quota = active_weight > 0.0 ? pool * weights[i] / active_weight : 0.0;
      alloc[i] = static_cast<int>(std::floor(quota));
      remainder[i] = quota - alloc[i];
      assigned += alloc[i];
    }
    // Largest remainder; ties toward the larger weight, then the lower index.
    std::array<int, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      if (reserved[a] != reserved[b]) return !reserved[a];
      if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
      return weights[a] > weights[b];
    });
    for (int k = 0; k < pool - assigned; ++k) ++alloc[order[static_cast<std::size_t>(k % (4 - n_reserved))]];

    bool changed = false;
    for (int i = 0; i < 4; ++i) {
      if (!reserved[i] && alloc[i] == 0) {
        reserved[i] = true;
        changed = true;
      }
    }
    if (!changed) return alloc;
  }
}

DesignedSchedule make_schedule(const SdpSolution& sol, const BeamBasis& basis, const FimContext& ctx,
                               const CMatrix& samples, const ProjectionParams& params, int total_T,
                               Pipeline pipeline, const SdpSettings& settings) {
  if (!sol.allocation.diagonal_only) {
    throw std::invalid_argument("make_schedule: requires a diagonal_only allocation");
  }
  CMatrix projected(basis.U.rows(), 4);
  for (int i = 0; i < 4; ++i) projected.col(i) = project_unit_modulus(basis.U.col(i), params, samples);

  DesignedSchedule out;
  out.projected = basis_from_profiles(projected);
  if (pipeline == Pipeline::OptimizeThenConstrain) {
    out.solution = sol;
  } else {
    out.solution = solve_lambda_sdp(out.projected, ctx, sol.allocation.budget, true, settings);
  }
  out.weights = lambda_to_weights(out.solution);
  out.schedule = reschedule(out, total_T);
  return out;
}

ProfileSchedule reschedule(const DesignedSchedule& design, int total_T) {
  ProfileSchedule s;
  for (int i = 0; i < 4; ++i) s.beams[static_cast<std::size_t>(i)] = design.projected.U.col(i);
  s.allocations = allocate_time(design.weights, total_T);
  s.total_T = total_T;
  return s;
}

}  // namespace nfris
