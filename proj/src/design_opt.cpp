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

#include "nfris/design_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "nfris/errors.hpp"

namespace nfris {

namespace {

using cd = std::complex<double>;

// Real coordinates of an n x n Hermitian matrix: diagonal entries, then the
// real and imaginary parts of each strictly upper entry.
struct HermitianCoord {
  int p;
  int q;
  enum Kind { Diag, Re, Im } kind;
};

std::vector<HermitianCoord> hermitian_coords(int n, bool diagonal_only) {
  std::vector<HermitianCoord> c;
  for (int i = 0; i < n; ++i) c.push_back({i, i, HermitianCoord::Diag});
  if (diagonal_only) return c;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      c.push_back({p, q, HermitianCoord::Re});
      c.push_back({p, q, HermitianCoord::Im});
    }
  }
  return c;
}

std::vector<sdp::Entry> coord_entries(const HermitianCoord& c) {
  switch (c.kind) {
    case HermitianCoord::Diag:
      return {{c.p, c.p, 1.0}};
    case HermitianCoord::Re:
      return {{c.p, c.q, 1.0}, {c.q, c.p, 1.0}};
    case HermitianCoord::Im:
      return {{c.p, c.q, cd(0.0, 1.0)}, {c.q, c.p, cd(0.0, -1.0)}};
  }
  return {};
}

CMatrix assemble(const std::vector<HermitianCoord>& coords, const Eigen::VectorXd& y, int n) {
  CMatrix v = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    for (const auto& e : coord_entries(coords[i])) v(e.row, e.col) += y[static_cast<Eigen::Index>(i)] * e.value;
  }
  return v;
}

// J_car of the covariance F F^H = P V P^H for each coordinate matrix V, given
// W = P^T B with B the score basis.
std::vector<Mat5> coordinate_fims(const std::vector<HermitianCoord>& coords, const CMatrix& w, const FimContext& ctx) {
  const double c = ctx.snr.factor();
  std::vector<Mat5> out;
  out.reserve(coords.size());
  for (const auto& co : coords) {
    // W^H conj(V) W for the coordinate matrix V.
    const auto wp = w.row(co.p);
    const auto wq = w.row(co.q);
    Eigen::Matrix<cd, 5, 5> g;
    switch (co.kind) {
      case HermitianCoord::Diag:
        g = wp.adjoint() * wp;
        break;
      case HermitianCoord::Re:
        g = wp.adjoint() * wq + wq.adjoint() * wp;
        break;
      case HermitianCoord::Im:
        g = cd(0.0, -1.0) * (wp.adjoint() * wq - wq.adjoint() * wp);
        break;
    }
    Mat5 js = c * g.real();
    js = 0.5 * (js + js.transpose());
    out.push_back(fim_cartesian(js, ctx.jac));
  }
  return out;
}

struct CoreSolution {
  CMatrix variable;  // unit trace
  double objective = 0.0;
  SolverStatus status = SolverStatus::Infeasible;
};

// PEB-minimisation SDP over an n x n Hermitian variable V with tr(V) = 1 and
// FIM sum_l y_l fims[l]. The returned objective is for the unit-trace problem.
CoreSolution solve_core(int n, const std::vector<HermitianCoord>& coords, const std::vector<Mat5>& fims,
                        const SdpSettings& settings) {
  const int nc = static_cast<int>(coords.size());
  CoreSolution out;

  Eigen::VectorXd y0 = Eigen::VectorXd::Zero(nc + 3);
  Mat5 j0 = Mat5::Zero();
  for (int i = 0; i < n; ++i) {
    y0[i] = 1.0 / n;
    j0 += fims[static_cast<std::size_t>(i)] / n;
  }
  if (!std::isfinite(peb(j0))) {
    out.variable = CMatrix::Identity(n, n) / double(n);
    out.objective = std::numeric_limits<double>::infinity();
    return out;
  }

  // Jacobi scaling of the FIM inside the Schur blocks; u_k = d_k^2 u'_k.
  const Eigen::Matrix<double, 5, 1> dscale = j0.diagonal().cwiseSqrt().cwiseInverse();
  const Mat5 j0s = dscale.asDiagonal() * j0 * dscale.asDiagonal();
  const Mat5 j0s_inv = j0s.inverse();

  sdp::Problem pr;
  pr.num_vars = nc + 3;
  pr.cost = Eigen::VectorXd::Zero(pr.num_vars);

  sdp::LmiBlock var_block;
  var_block.dim = n;
  var_block.constant = CMatrix::Zero(n, n);
  for (int i = 0; i < nc; ++i) var_block.terms.emplace_back(i, coord_entries(coords[static_cast<std::size_t>(i)]));
  pr.blocks.push_back(std::move(var_block));

  std::vector<std::vector<sdp::Entry>> fim_entries(static_cast<std::size_t>(nc));
  for (int i = 0; i < nc; ++i) {
    const Mat5& f = fims[static_cast<std::size_t>(i)];
    for (int r = 0; r < 5; ++r) {
      for (int c = 0; c < 5; ++c) {
        const double v = dscale[r] * dscale[c] * f(r, c);
        if (v != 0.0) fim_entries[static_cast<std::size_t>(i)].push_back({r, c, v});
      }
    }
  }

  for (int k = 0; k < 3; ++k) {
    sdp::LmiBlock b;
    b.dim = 6;
    b.constant = CMatrix::Zero(6, 6);
    b.constant(k, 5) = 1.0;
    b.constant(5, k) = 1.0;
    for (int i = 0; i < nc; ++i) {
      if (!fim_entries[static_cast<std::size_t>(i)].empty()) b.terms.emplace_back(i, fim_entries[static_cast<std::size_t>(i)]);
    }
    const int uvar = nc + k;
    b.terms.emplace_back(uvar, std::vector<sdp::Entry>{{5, 5, 1.0}});
    pr.blocks.push_back(std::move(b));
    pr.cost[uvar] = dscale[k] * dscale[k];
    y0[uvar] = 2.0 * j0s_inv(k, k);
  }

  pr.eq_matrix = Eigen::MatrixXd::Zero(1, pr.num_vars);
  pr.eq_matrix.block(0, 0, 1, n).setOnes();
  pr.eq_rhs = Eigen::VectorXd::Ones(1);

  sdp::Options opt;
  opt.tol = settings.tol;
  const sdp::Result r = sdp::solve(pr, y0, opt);

  out.variable = assemble(coords, r.y.head(nc), n);
  out.objective = r.objective;
  out.status = r.status;
  return out;
}

}  // namespace

BeamBasis build_beam_basis(const SteeringBundle& bundle, bool orthonormalize) {
  const Eigen::Index m = bundle.a.size();
  CMatrix u(m, 4);
  u.col(0) = bundle.a.conjugate();
  u.col(1) = bundle.d_rho.conjugate();
  u.col(2) = bundle.d_theta.conjugate();
  u.col(3) = bundle.d_phi.conjugate();
  if (!orthonormalize) return {u, false};

  // Modified Gram-Schmidt with one re-orthogonalisation pass.
  const double target = std::sqrt(static_cast<double>(m));
  for (int j = 0; j < 4; ++j) {
    const double original = u.col(j).norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) {
        const cd proj = u.col(i).dot(u.col(j));  // u_i^H u_j
        u.col(j) -= proj * u.col(i);
      }
    }
    const double nrm = u.col(j).norm();
    if (!(nrm > 1e-10 * original) || !(original > 0.0)) {
      throw BasisDegenerate("build_beam_basis: column " + std::to_string(j) +
                            " is linearly dependent on the previous beams");
    }
    u.col(j) /= nrm;
  }
  u *= target;
  return {u, true};
}

BeamBasis basis_from_profiles(CMatrix profiles) {
  if (profiles.cols() != 4) throw ShapeError("basis_from_profiles: expected 4 columns");
  return {std::move(profiles), false};
}

SdpSolution solve_lambda_sdp(const BeamBasis& basis, const FimContext& ctx, double budget, bool diagonal_only,
                             const SdpSettings& settings) {
  if (!(budget > 0.0)) throw std::invalid_argument("solve_lambda_sdp: budget must be positive");
  if (basis.U.rows() != ctx.size() || basis.U.cols() != 4) {
    throw ShapeError("solve_lambda_sdp: basis does not match the array");
  }
  const auto coords = hermitian_coords(4, diagonal_only);
  const CMatrix w = basis.U.transpose() * ctx.score_basis();
  const auto fims = coordinate_fims(coords, w, ctx);
  const CoreSolution core = solve_core(4, coords, fims, settings);

  SdpSolution sol;
  sol.allocation.lambda = budget * core.variable;
  sol.allocation.diagonal_only = diagonal_only;
  sol.allocation.budget = budget;
  sol.status = core.status;
  sol.objective = core.objective / budget;
  if (core.status == SolverStatus::Infeasible) {
    sol.peb_at_optimum = std::numeric_limits<double>::infinity();
    return sol;
  }
  sol.peb_at_optimum = evaluate_fim(ctx, PrecoderCovariance::factored(basis.U, sol.allocation.lambda)).peb;
  return sol;
}

FullXSolution solve_full_x_sdp(const FimContext& ctx, double budget, const SdpSettings& settings) {
  const int m = ctx.size();
  if (m > kMaxFullXElements) {
    throw CapacityError("solve_full_x_sdp: M = " + std::to_string(m) + " exceeds the dense limit of " +
                        std::to_string(kMaxFullXElements));
  }
  if (!(budget > 0.0)) throw std::invalid_argument("solve_full_x_sdp: budget must be positive");
  const auto coords = hermitian_coords(m, false);
  const auto fims = coordinate_fims(coords, ctx.score_basis(), ctx);
  const CoreSolution core = solve_core(m, coords, fims, settings);

  const double scale = budget * m;
  FullXSolution sol;
  sol.ffh = scale * core.variable;
  sol.x = PrecoderCovariance::dense(sol.ffh.conjugate());
  sol.status = core.status;
  sol.objective = core.objective / scale;
  sol.peb_at_optimum = core.status == SolverStatus::Infeasible ? std::numeric_limits<double>::infinity()
                                                               : evaluate_fim(ctx, sol.x).peb;
  return sol;
}

std::array<double, 4> lambda_to_weights(const SdpSolution& sol) {
  if (!sol.allocation.diagonal_only) {
    throw std::invalid_argument("lambda_to_weights: requires a diagonal_only allocation");
  }
  std::array<double, 4> w{};
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    w[static_cast<std::size_t>(i)] = std::max(0.0, sol.allocation.lambda(i, i).real());
    total += w[static_cast<std::size_t>(i)];
  }
  if (!(total > 0.0)) throw std::invalid_argument("lambda_to_weights: allocation has zero trace");
  for (auto& v : w) v /= total;
  return w;
}

}  // namespace nfris
