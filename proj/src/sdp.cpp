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

#include "nfris/sdp.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace nfris::sdp {

namespace {

using cd = std::complex<double>;

struct BlockState {
  Eigen::MatrixXcd inverse;
  double log_det = 0.0;
};

std::optional<BlockState> factor(const LmiBlock& block, const Eigen::VectorXd& y, bool with_inverse) {
  const Eigen::MatrixXcd f = evaluate(block, y);
  Eigen::LLT<Eigen::MatrixXcd> llt(f);
  if (llt.info() != Eigen::Success) return std::nullopt;
  const Eigen::VectorXd d = llt.matrixL().toDenseMatrix().diagonal().real();
  if ((d.array() <= 0.0).any() || !d.allFinite()) return std::nullopt;
  BlockState s;
  s.log_det = 2.0 * d.array().log().sum();
  if (with_inverse) s.inverse = llt.solve(Eigen::MatrixXcd::Identity(block.dim, block.dim));
  return s;
}

// Sum of log det F_b(y), or nullopt outside the interior.
std::optional<double> log_det_sum(const Problem& pr, const Eigen::VectorXd& y) {
  double v = 0.0;
  for (const auto& b : pr.blocks) {
    auto s = factor(b, y, false);
    if (!s) return std::nullopt;
    v += s->log_det;
  }
  return v;
}

// Gradient and Hessian of t c^T y - sum_b log det F_b(y).
bool derivatives(const Problem& pr, const Eigen::VectorXd& y, double t, Eigen::VectorXd& grad,
                 Eigen::MatrixXd& hess) {
  grad = t * pr.cost;
  hess.setZero(pr.num_vars, pr.num_vars);
  for (const auto& b : pr.blocks) {
    auto st = factor(b, y, true);
    if (!st) return false;
    const Eigen::MatrixXcd& s = st->inverse;
    const std::size_t nt = b.terms.size();
    std::vector<Eigen::MatrixXcd> sfs(nt);
    for (std::size_t a = 0; a < nt; ++a) {
      const auto& [var, entries] = b.terms[a];
      cd tr = 0.0;
      Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(b.dim, b.dim);
      for (const Entry& e : entries) {
        tr += s(e.col, e.row) * e.value;
        g.noalias() += e.value * s.col(e.row) * s.row(e.col);
      }
      grad[var] -= tr.real();
      sfs[a] = std::move(g);
    }
    for (std::size_t a = 0; a < nt; ++a) {
      const int va = b.terms[a].first;
      for (std::size_t c = a; c < nt; ++c) {
        const int vc = b.terms[c].first;
        cd h = 0.0;
        for (const Entry& e : b.terms[c].second) h += sfs[a](e.col, e.row) * e.value;
        hess(va, vc) += h.real();
        if (vc != va) hess(vc, va) += h.real();
      }
    }
  }
  return true;
}

}  // namespace

Eigen::MatrixXcd evaluate(const LmiBlock& block, const Eigen::VectorXd& y) {
  Eigen::MatrixXcd f = block.constant;
  for (const auto& [var, entries] : block.terms) {
    const double yi = y[var];
    if (yi == 0.0) continue;
    for (const Entry& e : entries) f(e.row, e.col) += yi * e.value;
  }
  return f;
}

// Squared Newton decrement below which a centring step is skipped, and above
// which a stalled centring marks the result inaccurate.
constexpr double kCentred = 1e-8;
constexpr double kStalled = 1e-6;

Result solve(const Problem& pr, const Eigen::VectorXd& y0, const Options& opt) {
  Result res;
  res.y = y0;
  res.objective = pr.cost.dot(y0);
  res.gap = std::numeric_limits<double>::infinity();

  if (pr.eq_matrix.rows() > 0) {
    const double resid = (pr.eq_matrix * y0 - pr.eq_rhs).norm();
    if (resid > 1e-9 * std::max(1.0, pr.eq_rhs.norm())) return res;
  }
  if (!log_det_sum(pr, y0)) return res;

  // Newton directions live in the null space of the equality constraints.
  Eigen::MatrixXd null_basis;
  if (pr.eq_matrix.rows() > 0) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(pr.eq_matrix);
    null_basis = lu.kernel();
  } else {
    null_basis = Eigen::MatrixXd::Identity(pr.num_vars, pr.num_vars);
  }

  double nu = 0.0;
  for (const auto& b : pr.blocks) nu += b.dim;

  Eigen::VectorXd y = y0;
  double t = nu / std::max(std::abs(pr.cost.dot(y)), 1e-300);
  bool clean = true;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;

  for (int outer = 0; outer < opt.max_outer; ++outer) {
    for (int it = 0; it < opt.max_newton_per_center; ++it) {
      if (!derivatives(pr, y, t, grad, hess)) {
        clean = false;
        break;
      }
      const Eigen::MatrixXd hr = null_basis.transpose() * hess * null_basis;
      const Eigen::VectorXd gr = null_basis.transpose() * grad;
      // Diagonal scaling; Hessian entries spread over many decades once the
      // iterate nears a low-rank boundary.
      const Eigen::VectorXd hs = hr.diagonal().cwiseAbs().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
      Eigen::LDLT<Eigen::MatrixXd> ldlt(hs.asDiagonal() * hr * hs.asDiagonal());
      if (ldlt.info() != Eigen::Success) {
        clean = false;
        break;
      }
      const Eigen::VectorXd dz = hs.asDiagonal() * ldlt.solve(-(hs.asDiagonal() * gr));
      const Eigen::VectorXd dy = null_basis * dz;
      const double decrement = -gr.dot(dz);
      ++res.newton_steps;
      if (decrement < kCentred) break;

      // Barrier differences are formed directly; t c^T y itself is too large
      // to compare in absolute terms near the end of the path.
      const double ld0 = *log_det_sum(pr, y);
      const double slope = grad.dot(dy);
      const double cdy = pr.cost.dot(dy);
      double step = 1.0;
      bool accepted = false;
      while (step > 1e-16) {
        const Eigen::VectorXd trial = y + step * dy;
        auto ld1 = log_det_sum(pr, trial);
        if (ld1 && t * step * cdy - (*ld1 - ld0) <= 0.25 * step * slope) {
          y = trial;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) {
        // No progress possible at this precision; treat as centred.
        if (decrement > kStalled) clean = false;
        break;
      }
      if (it + 1 == opt.max_newton_per_center && decrement > kStalled) clean = false;
    }

    res.y = y;
    res.objective = pr.cost.dot(y);
    res.gap = nu / t;
    if (res.gap <= opt.tol * std::abs(res.objective)) {
      res.status = clean ? Status::Optimal : Status::Inaccurate;
      return res;
    }
    t *= opt.barrier_growth;
  }
  res.status = Status::Inaccurate;
  return res;
}

}  // namespace nfris::sdp
