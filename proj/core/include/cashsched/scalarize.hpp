/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cashsched/milp_model.hpp"
#include "cashsched/solver.hpp"

namespace cashsched {

/// Linear membership of an objective value between its ideal (pis) and
/// anti-ideal (nis) values, clamped to [0, 1]. Returns 1 when the range is
/// degenerate.
double membership(double value, double pis, double nis, ObjSense sense);

/// True when pis and nis agree to 1e-7 relative.
bool degenerate_range(double pis, double nis);

struct PayoffEntry {
  std::string label;
  ObjSense sense = ObjSense::maximize;
  double pis = 0.0;
  double nis = 0.0;
};

struct PayoffTable {
  std::vector<PayoffEntry> entries;
  /// values[i][j]: objective i at the lexicographic optimizer of objective j.
  std::vector<std::vector<double>> values;

  std::size_t size() const { return entries.size(); }
};

/// Requires objective `objective` to be at least as good as `value`.
struct ObjectiveBound {
  int objective = 0;
  double value = 0.0;
};

/// Slack granted to a bound on a previously optimized objective.
double bound_tolerance(double value);

class PayoffError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Optimizes `objective` subject to `bounds` and returns the values of every
/// objective at the optimum. Throws PayoffError when infeasible or unbounded.
using PayoffSolver = std::function<std::vector<double>(int objective, const std::vector<ObjectiveBound>& bounds)>;

/// PIS_i is objective i's optimum alone. values[i][j] is the optimum of
/// objective i with objective j held at its PIS; NIS_i is the worst of
/// those over j != i.
PayoffTable compute_payoff_table(const std::vector<Objective>& objectives, const PayoffSolver& solve);

/// Payoff table of a scheduling model via branch and bound.
PayoffTable compute_payoff_table(const MilpModel& base, const SolveLimits& lim = {});

struct ThConfig {
  double gamma = 0.4;
  std::vector<double> theta;
};

/// Even theta split over `terms` memberships.
ThConfig default_th_config(int terms, double gamma = 0.4);

/// Throws std::invalid_argument unless gamma is in [0, 1] and theta has
/// `terms` entries in [0, 1] summing to 1 within 1e-9.
void validate_th_config(const ThConfig& cfg, std::size_t terms);
void validate_weights(const std::vector<double>& w, std::size_t terms);

/// What a solve optimizes over a scheduling model's objectives.
struct ScalarObjective {
  enum class Kind { single, th, weighted };
  Kind kind = Kind::single;
  int index = 0;                 // single
  ThConfig th;                   // th
  std::vector<double> weights;   // weighted
  PayoffTable payoffs;           // th, weighted
  std::vector<ObjectiveBound> bounds;

  static ScalarObjective single(int index, std::vector<ObjectiveBound> bounds = {});
  static ScalarObjective torabi_hassini(PayoffTable payoffs, ThConfig cfg);
  static ScalarObjective weighted_sum(PayoffTable payoffs, std::vector<double> weights);
};

/// Adds membership variables MU_i and LAMBDA0 linked to objective i by
///   MU_i <= (Z_i - NIS_i) / (PIS_i - NIS_i)   (max objectives)
///   MU_i <= (NIS_i - Z_i) / (NIS_i - PIS_i)   (min objectives)
/// MU_i is fixed to 1 when the range is degenerate and Z_i is then held at
/// PIS_i within 1e-7 relative. The new objective "TH",
/// max gamma*LAMBDA0 + (1-gamma)*sum theta_i*MU_i, is placed first;
/// the original objectives follow.
MilpModel build_th_model(const MilpModel& base, const PayoffTable& payoffs, const ThConfig& cfg);

/// Same memberships with objective "WS", max sum w_i*MU_i, placed first.
MilpModel build_weighted_sum(const MilpModel& base, const PayoffTable& payoffs, const std::vector<double>& weights);

/// Model whose objective 0 is the scalar objective; bound rows included.
MilpModel apply_objective(const MilpModel& base, const ScalarObjective& obj);

/// Index of the base objective within a model returned by apply_objective.
int base_objective_offset(const ScalarObjective& obj);

/// Scalar value of an objective vector (base objectives' values).
double scalar_value(const ScalarObjective& obj, const std::vector<double>& objective_values);

}  // namespace cashsched
