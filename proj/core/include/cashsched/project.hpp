/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cashsched/fuzzy.hpp"

namespace cashsched {

/// One way of executing an activity. Usages are per day.
struct Mode {
  NivtfNumber duration;
  double payment = 0.0;
  std::vector<NivtfNumber> renewable;
  std::vector<NivtfNumber> nonrenewable;

  friend bool operator==(const Mode&, const Mode&) = default;
};

struct Activity {
  std::string id;
  std::string name;
  std::vector<std::string> predecessors;
  std::vector<Mode> modes;
  bool is_dummy = false;

  friend bool operator==(const Activity&, const Activity&) = default;
};

/// Monthly period grid over days 1..T.
///
/// Boundaries TY_1 < TY_2 < ... < TY_Yn = T. Period y (0-based here) covers
/// days [TY_{y-1} + 1, TY_y] with TY_0 = 0, so a boundary day belongs to the
/// period it closes.
class PeriodGrid {
 public:
  PeriodGrid() = default;
  explicit PeriodGrid(std::vector<int> boundaries) : boundaries_(std::move(boundaries)) {}

  /// Uniform grid of `length`-day periods; the last period is cut at `horizon`.
  static PeriodGrid uniform(int horizon, int length);

  int count() const { return static_cast<int>(boundaries_.size()); }
  const std::vector<int>& boundaries() const { return boundaries_; }
  int first_day(int y) const { return y == 0 ? 1 : boundaries_[y - 1] + 1; }
  int last_day(int y) const { return boundaries_[y]; }
  /// 0-based period containing `day`, or nullopt outside [1, T].
  std::optional<int> period_of(int day) const;

  friend bool operator==(const PeriodGrid&, const PeriodGrid&) = default;

 private:
  std::vector<int> boundaries_;
};

struct ResourcePricing {
  std::vector<double> renewable;     // CR_k, money per unit
  std::vector<double> nonrenewable;  // CW_l, money per unit
  double daily_cap = 0.0;            // CC

  friend bool operator==(const ResourcePricing&, const ResourcePricing&) = default;
};

/// Financial parameters. Rates are per day and compound over
/// `compounding_days` once per period.
struct FinanceParams {
  double initial_capital = 0.0;
  double max_long_loan = 0.0;
  double max_short_loan = 0.0;
  double min_cash = 0.0;
  double r_excess = 0.0;
  double r_delay = 0.0;
  double r_long = 0.0;
  double r_short = 0.0;
  int compounding_days = 30;

  friend bool operator==(const FinanceParams&, const FinanceParams&) = default;
};

struct Project {
  std::string name;
  std::vector<Activity> activities;
  int horizon = 0;
  PeriodGrid periods;
  ResourcePricing pricing;
  FinanceParams finance;

  int renewable_count() const { return static_cast<int>(pricing.renewable.size()); }
  int nonrenewable_count() const { return static_cast<int>(pricing.nonrenewable.size()); }
  std::optional<int> index_of(const std::string& id) const;
  bool is_crisp() const;

  friend bool operator==(const Project&, const Project&) = default;
};

struct Diagnostic {
  std::string entity;
  std::string rule;
  std::string message;
};

/// Empty iff every structural invariant holds. Never throws.
std::vector<Diagnostic> validate_project(const Project& p);

class ProjectError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Resolved precedence structure of a validated project.
struct ProjectGraph {
  std::vector<std::vector<int>> predecessors;
  std::vector<std::vector<int>> successors;
  std::vector<int> topological_order;
  int source = -1;
  int sink = -1;
};

/// Throws ProjectError when references do not resolve or the graph is cyclic.
ProjectGraph build_graph(const Project& p);

}  // namespace cashsched
