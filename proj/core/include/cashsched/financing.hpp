/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cashsched/milp_model.hpp"
#include "cashsched/project.hpp"
#include "cashsched/timing.hpp"

namespace cashsched {

/// amount * (1 + rate)^days. Throws std::invalid_argument on a negative amount.
double compound_credit(double amount, double rate, int days);

/// principal / (1 + rate)^days. Throws std::invalid_argument on a negative principal.
double repay_debit(double principal, double rate, int days);

struct ScheduledActivity {
  int mode = 0;  // 0-based
  int start = 0;
  int completion = 0;

  friend bool operator==(const ScheduledActivity&, const ScheduledActivity&) = default;
};

/// One entry per activity, in project order. Days are 1-based.
struct Schedule {
  std::vector<ScheduledActivity> items;

  /// Completion day of the latest activity.
  int makespan() const;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precedence, mode range, completion offsets and grid checks against a
/// timing table. Returns one message per problem; empty when consistent.
std::vector<std::string> check_schedule(const Schedule& s, const Project& p, const TimingTable& tt);

struct FinancingDecisions {
  double ltl = 0.0;
  std::vector<double> stl;
  std::vector<double> pa;
  std::vector<double> dp;

  friend bool operator==(const FinancingDecisions&, const FinancingDecisions&) = default;
};

/// Ledger entries of one period. cf is the left-to-right sum of
/// capital, long_loan, stl, pa, excess_credit, delay_credit, -tbu,
/// -long_debit, -short_debit.
struct LedgerPeriod {
  double capital = 0.0;
  double long_loan = 0.0;
  double stl = 0.0;
  double pa = 0.0;
  double excess_credit = 0.0;
  double delay_credit = 0.0;
  double tbu = 0.0;
  double long_debit = 0.0;
  double short_debit = 0.0;
  double dp = 0.0;
  double due = 0.0;
  double cf = 0.0;

  double itemized_sum() const;
};

struct LedgerIssue {
  int period = 0;  // 1-based; 0 for whole-ledger issues
  int day = 0;     // 1-based day for daily-cap issues
  std::string rule;
  std::string message;
};

struct Ledger {
  std::vector<LedgerPeriod> periods;
  std::vector<LedgerIssue> issues;

  double final_cash() const { return periods.empty() ? 0.0 : periods.back().cf; }
  bool ok() const { return issues.empty(); }
};

/// Sum of payments of the activities completing in period y (0-based).
double period_due(const Schedule& s, const Project& p, int y);
std::vector<double> period_dues(const Schedule& s, const Project& p);

/// Daily resource cost of the schedule on one chain, indexed by day
/// (entry 0 unused), over the table's grid.
std::vector<double> daily_costs(const Schedule& s, const TimingTable& tt, int chain);

/// Daily costs summed per period.
std::vector<double> period_costs(const std::vector<double>& daily, const PeriodGrid& periods);

/// Cash-flow recursion with the period costs given directly. Flags floor,
/// loan-cap and due-split violations without repairing them.
Ledger evaluate_ledger(const FinanceParams& f, std::span<const double> tbu, std::span<const double> due,
                       const FinancingDecisions& d);

/// Ledger of a schedule on one cost chain. Also flags days whose cost on
/// chain L exceeds the daily cap.
Ledger evaluate_ledger(const Schedule& s, const FinancingDecisions& d, const Project& p, const TimingTable& tt,
                       int chain = kChainL);

/// Crisp-instance convenience overload.
Ledger evaluate_ledger(const Schedule& s, const FinancingDecisions& d, const Project& p);

/// Period data the financing problem of a fixed schedule depends on.
struct FinancingInputs {
  std::vector<double> due;
  std::vector<std::vector<double>> tbu;  // [chain][period]
};

FinancingInputs financing_inputs(const Schedule& s, const Project& p, const TimingTable& tt);

/// Linear program over LTL, STL_y, PA_y, DP_y and the CF chains with the
/// schedule's costs and dues as constants. Objectives "Z2" (one chain) or
/// "Z2L" and "Z2U" (two chains). Variable names match the scheduling model.
MilpModel build_financing_lp(const FinanceParams& f, const FinancingInputs& in);

class FinancingInfeasible : public std::runtime_error {
 public:
  FinancingInfeasible(int period, const std::string& what) : std::runtime_error(what), period_(period) {}
  /// First period (1-based) whose floor cannot be met.
  int period() const { return period_; }

 private:
  int period_;
};

struct FinancingResult {
  FinancingDecisions decisions;
  Ledger ledger;
  /// Optimal final cash flow of the maximized chain.
  double objective = 0.0;
};

/// Decisions maximizing the final cash flow of `chain`, ties broken by the
/// least total borrowing. Throws FinancingInfeasible when no decisions meet
/// the floor.
FinancingResult optimize_financing(const Schedule& s, const Project& p, const TimingTable& tt,
                                   int chain = kChainL);
FinancingResult optimize_financing(const Schedule& s, const Project& p);

/// Reads LTL, STL_y, PA_y, DP_y from a solved model's assignment.
FinancingDecisions decisions_from(const MilpModel& m, const std::vector<double>& values, int periods);

}  // namespace cashsched
