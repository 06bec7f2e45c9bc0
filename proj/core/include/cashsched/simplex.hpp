/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <span>
#include <vector>

#include "cashsched/milp_model.hpp"

namespace cashsched {

/// Centralized numerical tolerances of the embedded solver.
namespace tol {
inline constexpr double integrality = 1e-6;
inline constexpr double feasibility = 1e-7;
inline constexpr double objective = 1e-6;
inline constexpr double pivot = 1e-11;
inline constexpr double reduced_cost = 1e-9;
}  // namespace tol

enum class LpStatus { optimal, infeasible, unbounded, numerical_failure };

const char* to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::numerical_failure;
  double objective = 0.0;
  std::vector<double> values;
  int iterations = 0;
  /// Largest row violation relative to the row's largest coefficient,
  /// right-hand side or term, whichever is largest.
  double max_residual = 0.0;
};

/// Dense bounded-variable primal simplex over one objective of a model.
///
/// Binaries are relaxed to [0, 1]. Two phases with artificial variables;
/// Dantzig pricing with lowest-index tie-breaking, switching to Bland's rule
/// after a run of degenerate pivots. Every solution is re-checked against the
/// original rows and reported as numerical_failure when the check fails.
class DenseLp {
 public:
  DenseLp(const MilpModel& model, int objective);

  LpSolution solve() const { return solve(lower_, upper_); }
  /// Solve with replacement variable bounds (same size as the model).
  LpSolution solve(std::span<const double> lower, std::span<const double> upper) const;
  /// Solve with replacement bounds and right-hand sides.
  LpSolution solve(std::span<const double> lower, std::span<const double> upper,
                   std::span<const double> rhs) const;

  int rows() const { return m_; }
  int cols() const { return n_; }
  bool maximize() const { return maximize_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const std::vector<double>& rhs() const { return rhs_; }

 private:
  int m_ = 0;
  int n_ = 0;
  std::vector<double> a_;  // row-major m x n
  std::vector<RowSense> sense_;
  std::vector<double> rhs_;
  std::vector<double> cost_;  // maximization form
  double constant_ = 0.0;
  bool maximize_ = true;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> row_scale_;
};

/// Solves the LP relaxation of `objective` of the model.
LpSolution solve_lp(const MilpModel& model, int objective = 0);

}  // namespace cashsched
