/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "cashsched/financing.hpp"
#include "cashsched/scalarize.hpp"
#include "cashsched/solver.hpp"
#include "cashsched/timing.hpp"

namespace cashsched {

struct OracleOptions {
  long max_leaves = 10'000'000;
};

class OracleRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Calls `visit` for every schedule the oracle considers, in a fixed
/// order: activities in topological order, then modes, starts and
/// completion periods ascending. Dummy activities start as early as
/// precedence allows and real activities complete on the earliest day of
/// each reachable period. Days on which chain L exceeds the daily cap are
/// cut. Returns the number of schedules visited; throws OracleRefusal past
/// `max_leaves`.
long for_each_schedule(const Project& p, const TimingTable& tt, const std::function<void(const Schedule&)>& visit,
                       const OracleOptions& opt = {});

/// Distinct (makespan, dues, period costs) outcomes with the first schedule
/// reaching each.
struct ScheduleSpace {
  struct Candidate {
    int makespan = 0;
    FinancingInputs inputs;
    Schedule schedule;
  };
  std::vector<Candidate> candidates;
  long leaves = 0;

  static ScheduleSpace enumerate(const Project& p, const TimingTable& tt, const OracleOptions& opt = {});
};

struct OracleResult {
  SolveStatus status = SolveStatus::infeasible;
  /// Scalar objective value.
  double objective = 0.0;
  /// Base objectives: Z1 then Z2, or Z1, Z2L, Z2U.
  std::vector<double> objective_values;
  Schedule schedule;
  FinancingDecisions decisions;
  long leaves = 0;
  long candidates = 0;
};

/// Objectives the oracle optimizes over, in scheduling-model order.
std::vector<Objective> oracle_objectives(const TimingTable& tt);

/// True optimum of `obj` over an enumerated space, financing optimized by
/// linear programming per candidate. Ties keep the earlier candidate.
OracleResult optimize_over(const ScheduleSpace& space, const Project& p, const TimingTable& tt,
                           const ScalarObjective& obj);

/// Payoff table computed by the oracle.
PayoffTable oracle_payoff_table(const ScheduleSpace& space, const Project& p, const TimingTable& tt);

/// Enumerates and optimizes in one call.
OracleResult enumerate_exhaustive(const Project& p, const TimingTable& tt, const ScalarObjective& obj,
                                  const OracleOptions& opt = {});

}  // namespace cashsched
