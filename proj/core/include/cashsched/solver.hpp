/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cashsched/financing.hpp"
#include "cashsched/milp_model.hpp"
#include "cashsched/simplex.hpp"

namespace cashsched {

struct SolveLimits {
  long max_nodes = 5'000'000;
  double max_seconds = 3600.0;
  /// Relative gap at which the search stops early with feasible_limit.
  double gap = 1e-9;
};

/// Throws std::invalid_argument unless every limit is positive.
void check_limits(const SolveLimits& lim);

enum class SolveStatus {
  optimal,
  feasible_limit,
  infeasible,
  /// A limit was reached before any integral solution was found.
  limit_no_incumbent,
  unbounded,
  numerical_failure,
};

const char* to_string(SolveStatus s);

struct MilpSolution {
  SolveStatus status = SolveStatus::infeasible;
  double objective = 0.0;
  /// Best bound on the optimum (equals objective when optimal).
  double bound = 0.0;
  std::vector<double> values;
  long nodes = 0;
  double seconds = 0.0;
  double gap = 0.0;

  bool has_incumbent() const
  {
    return status == SolveStatus::optimal || status == SolveStatus::feasible_limit;
  }
};

/// Thrown when a child relaxation exceeds its parent's bound.
class BoundViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Best-first branch and bound over the binaries of `m` for one objective.
/// Open nodes are ordered by relaxation bound, ties by creation order; the
/// branching variable is the most fractional binary, ties by lowest index.
MilpSolution solve_milp(const MilpModel& m, const SolveLimits& lim = {}, int objective = 0);

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decodes mode, start and completion from the X_i_m_t and XP_i_m_t values
/// of a solved scheduling model. Where a mode has no XP indicators the
/// completion is start plus the mode's fixed offset. Throws DecodeError on
/// non-integral binaries or when an activity has no or several starts.
Schedule extract_schedule(const MilpModel& m, const std::vector<double>& values, const Project& p,
                          const TimingTable& tt);

}  // namespace cashsched
