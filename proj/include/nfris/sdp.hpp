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
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace nfris::sdp {

// Small dense interior-point solver for problems of the form
//
//   minimize    c^T y
//   subject to  F_b(y) = F_b0 + sum_i y_i F_bi  >= 0   (Hermitian, every block b)
//               A y = b
//
// solved with a log-barrier path-following method and equality-constrained
// Newton centering steps. Coefficient matrices are given as explicit entry
// lists (both triangles), which keeps single-entry coordinates cheap.

struct Entry {
  int row;
  int col;
  std::complex<double> value;
};

struct LmiBlock {
  int dim = 0;
  Eigen::MatrixXcd constant;
  // (variable index, coefficient entries). A variable may be absent.
  std::vector<std::pair<int, std::vector<Entry>>> terms;
};

struct Problem {
  int num_vars = 0;
  Eigen::VectorXd cost;
  std::vector<LmiBlock> blocks;
  Eigen::MatrixXd eq_matrix;  // p x num_vars, may have zero rows
  Eigen::VectorXd eq_rhs;
};

struct Options {
  // Stop when the duality gap is below tol * |objective|.
  double tol = 1e-8;
  double barrier_growth = 20.0;
  int max_newton_per_center = 200;
  int max_outer = 80;
};

enum class Status { Optimal, Inaccurate, Infeasible };

struct Result {
  Eigen::VectorXd y;
  double objective = 0.0;
  double gap = 0.0;
  Status status = Status::Infeasible;
  int newton_steps = 0;
};

Eigen::MatrixXcd evaluate(const LmiBlock& block, const Eigen::VectorXd& y);

// y0 must be strictly feasible for every block and satisfy the equalities;
// otherwise the result is Infeasible with y = y0.
Result solve(const Problem& problem, const Eigen::VectorXd& y0, const Options& options = {});

}  // namespace nfris::sdp
