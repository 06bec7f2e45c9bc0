/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "cashsched/financing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cashsched/simplex.hpp"

namespace cashsched {

namespace {

std::string idx(int v) { return std::to_string(v); }

std::string money(double v)
{
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << v;
  return os.str();
}

// Tolerance for ledger checks on money values.
double slack(double v) { return 1e-7 * std::max(1.0, std::abs(v)); }

}  // namespace

double compound_credit(double amount, double rate, int days)
{
  if (amount < 0.0) throw std::invalid_argument("compound_credit: negative amount " + money(amount));
  return amount * std::pow(1.0 + rate, days);
}

double repay_debit(double principal, double rate, int days)
{
  if (principal < 0.0) throw std::invalid_argument("repay_debit: negative principal " + money(principal));
  return principal / std::pow(1.0 + rate, days);
}

int Schedule::makespan() const
{
  int out = 0;
  for (const auto& a : items) out = std::max(out, a.completion);
  return out;
}

std::vector<std::string> check_schedule(const Schedule& s, const Project& p, const TimingTable& tt)
{
  std::vector<std::string> out;
  if (s.items.size() != p.activities.size()) {
    out.push_back("schedule has " + idx(static_cast<int>(s.items.size())) + " entries for " +
                  idx(static_cast<int>(p.activities.size())) + " activities");
    return out;
  }
  const ProjectGraph g = build_graph(p);
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    const auto& a = s.items[i];
    const auto& id = p.activities[i].id;
    if (a.mode < 0 || a.mode >= static_cast<int>(p.activities[i].modes.size())) {
      out.push_back(id + ": mode " + idx(a.mode + 1) + " does not exist");
      continue;
    }
    const auto& mt = tt.at(static_cast<int>(i), a.mode);
    const int offset = a.completion - a.start;
    if (a.start < 1 || a.completion > tt.grid_days) {
      out.push_back(id + ": days [" + idx(a.start) + ", " + idx(a.completion) + "] outside the grid");
    }
    if (offset < mt.min_completion || offset > mt.max_completion) {
      out.push_back(id + ": completion offset " + idx(offset) + " outside [" + idx(mt.min_completion) + ", " +
                    idx(mt.max_completion) + "]");
    }
    if (a.start + mt.window[kChainL] - 1 > tt.grid_days) {
      out.push_back(id + ": execution runs past day " + idx(tt.grid_days));
    }
    if (!p.periods.period_of(a.completion)) {
      out.push_back(id + ": completion day " + idx(a.completion) + " is in no period");
    }
  }
  if (!out.empty()) return out;
  for (std::size_t j = 0; j < s.items.size(); ++j) {
    for (int i : g.predecessors[j]) {
      const auto& pi = s.items[i];
      const int lag = tt.at(i, pi.mode).lag_days;
      if (s.items[j].start < pi.start + lag) {
        out.push_back(p.activities[j].id + ": starts on day " + idx(s.items[j].start) + " before " +
                      p.activities[i].id + " allows (day " + idx(pi.start + lag) + ")");
      }
    }
  }
  return out;
}

double LedgerPeriod::itemized_sum() const
{
  double v = capital;
  v += long_loan;
  v += stl;
  v += pa;
  v += excess_credit;
  v += delay_credit;
  v -= tbu;
  v -= long_debit;
  v -= short_debit;
  return v;
}

double period_due(const Schedule& s, const Project& p, int y)
{
  double due = 0.0;
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    const auto& a = s.items[i];
    if (p.periods.period_of(a.completion) == y) due += p.activities[i].modes[a.mode].payment;
  }
  return due;
}

std::vector<double> period_dues(const Schedule& s, const Project& p)
{
  std::vector<double> out(p.periods.count());
  for (int y = 0; y < p.periods.count(); ++y) out[y] = period_due(s, p, y);
  return out;
}

std::vector<double> daily_costs(const Schedule& s, const TimingTable& tt, int chain)
{
  std::vector<double> out(tt.grid_days + 1, 0.0);
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    const auto& a = s.items[i];
    const auto& mt = tt.at(static_cast<int>(i), a.mode);
    const int c = tt.crisp ? kChainL : chain;
    for (int t = a.start; t < a.start + mt.window[c] && t <= tt.grid_days; ++t) {
      if (t >= 1) out[t] += mt.daily_cost[c];
    }
  }
  return out;
}

std::vector<double> period_costs(const std::vector<double>& daily, const PeriodGrid& periods)
{
  std::vector<double> out(periods.count(), 0.0);
  for (int y = 0; y < periods.count(); ++y) {
    for (int t = periods.first_day(y); t <= periods.last_day(y) && t < static_cast<int>(daily.size()); ++t) {
      out[y] += daily[t];
    }
  }
  return out;
}

Ledger evaluate_ledger(const FinanceParams& f, std::span<const double> tbu, std::span<const double> due,
                       const FinancingDecisions& d)
{
  const std::size_t Y = tbu.size();
  if (due.size() != Y || d.stl.size() != Y || d.pa.size() != Y || d.dp.size() != Y) {
    throw std::invalid_argument("ledger dimensions disagree: " + idx(static_cast<int>(Y)) + " periods of cost, " +
                                idx(static_cast<int>(due.size())) + " of dues, decisions for " +
                                idx(static_cast<int>(d.stl.size())) + "/" + idx(static_cast<int>(d.pa.size())) +
                                "/" + idx(static_cast<int>(d.dp.size())));
  }
  Ledger led;
  led.periods.resize(Y);
  const int D = f.compounding_days;
  if (d.ltl < -slack(0.0) || d.ltl > f.max_long_loan + slack(f.max_long_loan)) {
    led.issues.push_back({0, 0, "long loan", "ltl " + money(d.ltl) + " outside [0, " + money(f.max_long_loan) + "]"});
  }
  for (std::size_t y = 0; y < Y; ++y) {
    const int py = static_cast<int>(y) + 1;
    LedgerPeriod& e = led.periods[y];
    e.stl = d.stl[y];
    e.pa = d.pa[y];
    e.dp = d.dp[y];
    e.tbu = tbu[y];
    e.due = due[y];
    if (y == 0) {
      e.capital = f.initial_capital;
      e.long_loan = d.ltl;
    } else {
      const LedgerPeriod& prev = led.periods[y - 1];
      e.excess_credit = prev.cf * std::pow(1.0 + f.r_excess, D);
      e.delay_credit = compound_credit(std::max(prev.dp, 0.0), f.r_delay, D);
      e.long_debit = repay_debit(std::max(d.ltl, 0.0), f.r_long, D);
      e.short_debit = repay_debit(std::max(prev.stl, 0.0), f.r_short, D);
    }
    e.cf = e.itemized_sum();
    if (e.stl < -slack(0.0) || e.stl > f.max_short_loan + slack(f.max_short_loan)) {
      led.issues.push_back({py, 0, "short loan", "stl " + money(e.stl) + " outside [0, " + money(f.max_short_loan) + "]"});
    }
    if (e.pa < -slack(0.0) || e.dp < -slack(0.0)) {
      led.issues.push_back({py, 0, "due split", "negative payment or delayed payment"});
    }
    if (std::abs(e.pa + e.dp - e.due) > slack(e.due)) {
      led.issues.push_back({py, 0, "due split", "pa + dp = " + money(e.pa + e.dp) + " but due is " + money(e.due)});
    }
    if (e.cf < f.min_cash - slack(f.min_cash)) {
      led.issues.push_back({py, 0, "cash floor", "cash flow " + money(e.cf) + " below " + money(f.min_cash)});
    }
  }
  return led;
}

Ledger evaluate_ledger(const Schedule& s, const FinancingDecisions& d, const Project& p, const TimingTable& tt,
                       int chain)
{
  const std::vector<double> daily = daily_costs(s, tt, chain);
  const std::vector<double> tbu = period_costs(daily, p.periods);
  const std::vector<double> due = period_dues(s, p);
  Ledger led = evaluate_ledger(p.finance, tbu, due, d);
  const std::vector<double> worst = tt.crisp || chain == kChainL ? daily : daily_costs(s, tt, kChainL);
  const double cap = p.pricing.daily_cap;
  for (int t = 1; t < static_cast<int>(worst.size()); ++t) {
    if (worst[t] > cap + slack(cap)) {
      led.issues.push_back({p.periods.period_of(t).value_or(-1) + 1, t, "daily cap",
                            "resource cost " + money(worst[t]) + " on day " + idx(t) + " exceeds " + money(cap)});
    }
  }
  return led;
}

Ledger evaluate_ledger(const Schedule& s, const FinancingDecisions& d, const Project& p)
{
  return evaluate_ledger(s, d, p, make_crisp_timing(p));
}

FinancingInputs financing_inputs(const Schedule& s, const Project& p, const TimingTable& tt)
{
  FinancingInputs in;
  in.due = period_dues(s, p);
  for (int c = 0; c < tt.chains(); ++c) in.tbu.push_back(period_costs(daily_costs(s, tt, c), p.periods));
  return in;
}

MilpModel build_financing_lp(const FinanceParams& f, const FinancingInputs& in)
{
  const int Y = static_cast<int>(in.due.size());
  const int chains = static_cast<int>(in.tbu.size());
  if (chains < 1 || chains > 2) throw std::invalid_argument("financing LP needs one or two cost chains");
  for (const auto& t : in.tbu) {
    if (static_cast<int>(t.size()) != Y) throw std::invalid_argument("cost and due periods disagree");
  }
  const double D = f.compounding_days;
  const double g_excess = std::pow(1.0 + f.r_excess, D);
  const double g_delay = std::pow(1.0 + f.r_delay, D);
  const double g_long = std::pow(1.0 + f.r_long, D);
  const double g_short = std::pow(1.0 + f.r_short, D);

  MilpModel m;
  const int ltl = m.add_continuous("LTL", 0.0, f.max_long_loan);
  std::vector<int> stl(Y), pa(Y), dp(Y);
  for (int y = 0; y < Y; ++y) {
    stl[y] = m.add_continuous("STL_" + idx(y + 1), 0.0, f.max_short_loan);
    pa[y] = m.add_continuous("PA_" + idx(y + 1));
    dp[y] = m.add_continuous("DP_" + idx(y + 1));
    m.add_constraint("dues_" + idx(y + 1), {{pa[y], 1.0}, {dp[y], 1.0}}, RowSense::eq, in.due[y]);
  }
  std::vector<std::vector<int>> cf(chains, std::vector<int>(Y));
  for (int c = 0; c < chains; ++c) {
    const std::string tag = chains == 1 ? "" : (c == kChainL ? "_L" : "_U");
    for (int y = 0; y < Y; ++y) cf[c][y] = m.add_continuous("CF" + tag + "_" + idx(y + 1), f.min_cash, kInf);
    for (int y = 0; y < Y; ++y) {
      std::vector<Term> row{{cf[c][y], 1.0}, {stl[y], -1.0}, {pa[y], -1.0}};
      double rhs = -in.tbu[c][y];
      if (y == 0) {
        row.push_back({ltl, -1.0});
        rhs += f.initial_capital;
      } else {
        row.push_back({cf[c][y - 1], -g_excess});
        row.push_back({dp[y - 1], -g_delay});
        row.push_back({ltl, 1.0 / g_long});
        row.push_back({stl[y - 1], 1.0 / g_short});
      }
      m.add_constraint("cash" + tag + "_" + idx(y + 1), std::move(row), RowSense::eq, rhs);
    }
  }
  if (Y == 0) return m;
  if (chains == 1) {
    m.add_objective("Z2", ObjSense::maximize, {{cf[0][Y - 1], 1.0}});
  } else {
    m.add_objective("Z2L", ObjSense::maximize, {{cf[kChainL][Y - 1], 1.0}});
    m.add_objective("Z2U", ObjSense::maximize, {{cf[kChainU][Y - 1], 1.0}});
  }
  return m;
}

FinancingDecisions decisions_from(const MilpModel& m, const std::vector<double>& values, int periods)
{
  auto get = [&](const std::string& name) {
    const auto v = m.find(name);
    if (!v) throw std::invalid_argument("model has no variable " + name);
    return values[*v];
  };
  FinancingDecisions d;
  d.ltl = get("LTL");
  for (int y = 1; y <= periods; ++y) {
    d.stl.push_back(get("STL_" + idx(y)));
    d.pa.push_back(get("PA_" + idx(y)));
    d.dp.push_back(get("DP_" + idx(y)));
  }
  return d;
}

namespace {

[[noreturn]] void report_infeasible(const FinanceParams& f, const FinancingInputs& in)
{
  // Grow the horizon until the floor first becomes unreachable.
  const int Y = static_cast<int>(in.due.size());
  for (int y = 1; y <= Y; ++y) {
    FinancingInputs head;
    head.due.assign(in.due.begin(), in.due.begin() + y);
    for (const auto& t : in.tbu) head.tbu.emplace_back(t.begin(), t.begin() + y);
    if (solve_lp(build_financing_lp(f, head)).status == LpStatus::infeasible) {
      throw FinancingInfeasible(y, "no financing keeps the cash flow of period " + idx(y) + " at or above " +
                                       money(f.min_cash));
    }
  }
  throw FinancingInfeasible(Y, "no feasible financing");
}

}  // namespace

FinancingResult optimize_financing(const Schedule& s, const Project& p, const TimingTable& tt, int chain)
{
  const FinancingInputs in = financing_inputs(s, p, tt);
  MilpModel m = build_financing_lp(p.finance, in);
  const int Y = p.periods.count();
  const int obj = tt.crisp ? 0 : chain;
  const LpSolution first = solve_lp(m, obj);
  if (first.status == LpStatus::infeasible) report_infeasible(p.finance, in);
  if (first.status != LpStatus::optimal) {
    throw std::runtime_error(std::string("financing LP failed: ") + to_string(first.status));
  }
  // Keep the optimum and borrow as little as possible.
  std::vector<Term> keep = m.objectives()[obj].terms;
  m.add_constraint("keep_optimum", keep, RowSense::ge, first.objective - 1e-9 * std::max(1.0, std::abs(first.objective)));
  std::vector<Term> borrowing{{*m.find("LTL"), 1.0}};
  for (int y = 1; y <= Y; ++y) borrowing.push_back({*m.find("STL_" + idx(y)), 1.0});
  const int tie = m.add_objective("borrowing", ObjSense::minimize, borrowing);
  LpSolution second = solve_lp(m, tie);
  const LpSolution& best = second.status == LpStatus::optimal ? second : first;

  FinancingResult out;
  out.decisions = decisions_from(m, best.values, Y);
  for (int y = 0; y < Y; ++y) {
    // Snap the split so pa + dp reproduces the due exactly.
    out.decisions.pa[y] = std::clamp(out.decisions.pa[y], 0.0, in.due[y]);
    out.decisions.dp[y] = in.due[y] - out.decisions.pa[y];
    out.decisions.stl[y] = std::clamp(out.decisions.stl[y], 0.0, p.finance.max_short_loan);
  }
  out.decisions.ltl = std::clamp(out.decisions.ltl, 0.0, p.finance.max_long_loan);
  out.ledger = evaluate_ledger(s, out.decisions, p, tt, tt.crisp ? kChainL : chain);
  out.objective = out.ledger.final_cash();
  return out;
}

FinancingResult optimize_financing(const Schedule& s, const Project& p)
{
  return optimize_financing(s, p, make_crisp_timing(p));
}

}  // namespace cashsched
