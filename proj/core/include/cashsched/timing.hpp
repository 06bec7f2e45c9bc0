/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <array>
#include <vector>

#include "cashsched/project.hpp"

namespace cashsched {

/// Cost chains of the alpha-parametric model. The crisp model has only the
/// first one. Chain L takes the larger occupancy window and usage coefficient
/// of each parameter's two triangles, chain U the smaller, so the U chain is
/// never costlier than the L chain on any day.
enum Chain : int { kChainL = 0, kChainU = 1 };

/// Defuzzified timing and cost data of one (activity, mode) at an alpha-level.
struct ModeTiming {
  /// Precedence lag of each triangle copy (GEQ_FULL mix), snapped to
  /// integers within 1e-9.
  std::array<double, 2> lag{};
  /// Smallest integer start-to-start distance satisfying both lags.
  int lag_days = 0;
  /// Completion offset bounds of each copy, rounded half-up.
  std::array<int, 2> completion_min{};
  std::array<int, 2> completion_max{};
  /// Intersection of the per-copy offset ranges; empty when min > max.
  int min_completion = 0;
  int max_completion = 0;
  std::array<int, 2> window{};
  std::array<std::vector<double>, 2> renewable;
  std::array<std::vector<double>, 2> nonrenewable;
  std::array<double, 2> daily_cost{};

  bool schedulable() const { return min_completion <= max_completion; }
};

struct TimingTable {
  double alpha = 0.0;
  bool crisp = false;
  int grid_days = 0;
  std::vector<std::vector<ModeTiming>> modes;  // [activity][mode]

  int chains() const { return crisp ? 1 : 2; }
  const ModeTiming& at(int i, int m) const { return modes[i][m]; }
};

/// Integer rounding used for day counts: halves go up, with a 1e-9 guard.
int round_half_up(double x);
/// ceil with a 1e-9 guard against representation noise.
int ceil_days(double x);

/// Timing of the alpha-parametric model over `grid_days` days (0 = horizon).
TimingTable make_timing(const Project& p, double alpha, int grid_days = 0);

/// Timing of the crisp model; throws ProjectError when a parameter is fuzzy.
TimingTable make_crisp_timing(const Project& p, int grid_days = 0);

/// Sum over activities of the largest per-mode serial span at this
/// alpha-level. Placing activities back to back from day 1 always fits in
/// horizon_bound + 1 days.
int horizon_bound(const Project& p, double alpha);

}  // namespace cashsched
