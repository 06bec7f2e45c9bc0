/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cashsched/builder.hpp"
#include "cashsched/financing.hpp"
#include "cashsched/scalarize.hpp"
#include "cashsched/solver.hpp"

namespace cashsched {

enum class Method { th, weighted, single_makespan, single_profit };

const char* to_string(Method m);
std::optional<Method> parse_method(std::string_view s);

/// Alpha-level used for a fuzzy instance when none is given.
inline constexpr double kDefaultAlpha = 0.5;

struct RunOptions {
  /// Crisp model when absent and the instance is crisp.
  std::optional<double> alpha;
  Method method = Method::th;
  double gamma = 0.4;
  /// Empty means an even split.
  std::vector<double> theta;
  std::vector<double> weights;
  SolveLimits limits;
  ModelForm form = ModelForm::compact;
};

/// True when the run builds the deterministic model.
bool crisp_run(const Project& p, const RunOptions& opt);

/// Number of base objectives: 2 crisp (Z1, Z2), 3 otherwise (Z1, Z2L, Z2U).
std::size_t objective_count(const Project& p, const RunOptions& opt);

/// Throws std::invalid_argument on an alpha outside [0, 1], bad limits, or
/// weight vectors whose arity or sum does not fit the method.
void check_run_options(const Project& p, const RunOptions& opt);

/// Timing table and base scheduling model of a run.
struct BaseModel {
  TimingTable timing;
  MilpModel model;
};
BaseModel build_base(const Project& p, const RunOptions& opt);

struct RunResult {
  SolveStatus status = SolveStatus::infeasible;
  bool crisp = true;
  double alpha = 0.0;
  std::vector<std::string> labels;
  std::vector<ObjSense> senses;
  /// Base objective values at the reported solution.
  std::vector<double> objective_values;
  std::optional<PayoffTable> payoffs;
  std::vector<double> memberships;
  std::optional<double> lambda0;
  /// Value of the optimized scalar objective.
  double scalar = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  double seconds = 0.0;
  long nodes = 0;
  /// Set when status has an incumbent.
  Schedule schedule;
  FinancingDecisions decisions;
  Ledger ledger;
  TimingTable timing;
  /// Why the run stopped without a solution, when it did.
  std::string message;

  bool has_solution() const { return status == SolveStatus::optimal || status == SolveStatus::feasible_limit; }
};

/// Scalar objective of a run over `base`. th and weighted compute the
/// payoff table first and throw PayoffError when it fails.
ScalarObjective make_scalar_objective(const MilpModel& base, const RunOptions& opt);

/// Builds the model, computes the payoff table when the method needs one,
/// solves with branch and bound and decodes schedule, financing and ledger.
RunResult run_solve(const Project& p, const RunOptions& opt);

/// Ledger of a fixed schedule: replays `decisions` when given, otherwise
/// optimizes financing. The ledger follows chain L for fuzzy runs.
struct EvaluateResult {
  FinancingDecisions decisions;
  Ledger ledger;
  bool optimized = false;
};
EvaluateResult evaluate_schedule(const Project& p, const TimingTable& tt, const Schedule& s,
                                 const std::optional<FinancingDecisions>& decisions);

/// Timing table of a run without building the model.
TimingTable run_timing(const Project& p, const RunOptions& opt);

}  // namespace cashsched
