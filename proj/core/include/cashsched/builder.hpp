/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstddef>

#include "cashsched/milp_model.hpp"
#include "cashsched/project.hpp"
#include "cashsched/timing.hpp"

namespace cashsched {

/// `full` emits every constraint family over the complete index sets
/// (X, XP over all days, XYP over all periods and days). `compact` emits an
/// equivalent model for the embedded solver: start variables restricted to
/// precedence time windows, completion indicators substituted where the
/// completion offset is fixed, XYP folded into the dues rows and the
/// per-resource daily rows aggregated into daily cost rows.
enum class ModelForm { full, compact };

struct BuildOptions {
  ModelForm form = ModelForm::full;
  /// Refuse to build models with more variables than this.
  std::size_t max_variables = 2'000'000;
  /// Shrink the day grid to min(T, horizon_bound + 1).
  bool trim_grid = false;
};

class ModelSizeError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// Deterministic bi-objective model: objectives "Z1" (min makespan) and
/// "Z2" (max final cash flow). Requires an all-crisp instance.
MilpModel build_crisp_model(const Project& p, const BuildOptions& opt = {});

/// Alpha-parametric model: objectives "Z1", "Z2L", "Z2U" with one shared
/// schedule and two cost chains.
MilpModel build_ivf_model(const Project& p, double alpha, const BuildOptions& opt = {});

/// Builds from an explicit timing table (crisp when tt.crisp).
MilpModel build_model(const Project& p, const TimingTable& tt, const BuildOptions& opt = {});

/// Day grid length the builders use for this project.
int grid_days(const Project& p, double alpha, const BuildOptions& opt);

/// Earliest start per activity and latest start per (activity, mode) implied
/// by the precedence lags and the day grid. Modes whose window is empty are
/// unschedulable.
struct TimeWindows {
  std::vector<int> earliest;
  std::vector<std::vector<int>> latest;
};
TimeWindows time_windows(const Project& p, const TimingTable& tt);

}  // namespace cashsched
