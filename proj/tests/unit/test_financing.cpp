/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include <doctest.h>

#include <cmath>

#include "cashsched/financing.hpp"
#include "cashsched/instance_io.hpp"
#include "cashsched/pipeline.hpp"
#include "fixtures.hpp"

using namespace cashsched;
using namespace fixtures;

namespace {

FinanceParams ledger_finance()
{
  FinanceParams f;
  f.initial_capital = 1'000'000;
  f.max_long_loan = 500'000;
  f.max_short_loan = 100'000;
  f.r_excess = 0.0125;
  f.r_delay = 0.1;
  f.r_long = 0.06;
  f.r_short = 0.075;
  return f;
}

const std::vector<double> kTbu{210000, 253350, 401100, 327100};
const std::vector<double> kDue{19890, 62010, 56355, 79495};

FinancingDecisions ledger_decisions()
{
  FinancingDecisions d;
  d.ltl = 0;
  d.stl = {100000, 100000, 0, 100000};
  d.pa = {0, 0, 0, 79495};
  d.dp = {19890, 62010, 56355, 0};
  return d;
}

}  // namespace

TEST_CASE("compounding and repayment")
{
  // Oracle values from an independent double-precision evaluation.
  CHECK(compound_credit(890000, 0.0125, 30) == doctest::Approx(1291935.8904063597).epsilon(1e-12));
  CHECK(compound_credit(19890, 0.1, 30) == doctest::Approx(347068.6111281515).epsilon(1e-12));
  CHECK(repay_debit(100000, 0.075, 30) == doctest::Approx(11422.103008134).epsilon(1e-12));
  CHECK(compound_credit(123.5, 0.0, 30) == 123.5);
  CHECK(repay_debit(0, 0.075, 30) == 0.0);
  CHECK(repay_debit(4567, 0.0, 30) == 4567);
  CHECK_THROWS_AS(compound_credit(-1, 0.1, 30), std::invalid_argument);
  CHECK_THROWS_AS(repay_debit(-1, 0.1, 30), std::invalid_argument);
}

TEST_CASE("published ledger replay")
{
  const Ledger l = evaluate_ledger(ledger_finance(), kTbu, kDue, ledger_decisions());
  REQUIRE(l.periods.size() == 4);
  const double want[] = {890000.000, 1474232.399, 2809530.777, 4914108.476};
  for (int y = 0; y < 4; ++y) {
    CAPTURE(y);
    CHECK(l.periods[y].cf == doctest::Approx(want[y]).epsilon(5e-4));
    CHECK(std::abs(l.periods[y].cf - want[y]) < 1e-3);
    CHECK(l.periods[y].itemized_sum() == l.periods[y].cf);
  }
  CHECK(l.ok());

  const LedgerReplay r = parse_replay(read_file(CASHSCHED_DATA_DIR "/case22_ledger.json"));
  const Ledger from_file = evaluate_ledger(r.finance, r.tbu, r.due, r.decisions);
  CHECK(from_file.final_cash() == l.final_cash());
}

TEST_CASE("ledger flags violations without repairing them")
{
  FinanceParams f = ledger_finance();
  f.min_cash = 2'000'000;
  FinancingDecisions d = ledger_decisions();
  d.stl[0] = 200000;
  d.pa[1] = 5;
  const Ledger l = evaluate_ledger(f, kTbu, kDue, d);
  CHECK_FALSE(l.ok());
  bool floor = false, cap = false, split = false;
  for (const auto& i : l.issues) {
    floor = floor || i.rule == "cash floor";
    cap = cap || i.rule == "short loan";
    split = split || i.rule == "due split";
  }
  CHECK(floor);
  CHECK(cap);
  CHECK(split);
  CHECK_THROWS(evaluate_ledger(f, kTbu, std::vector<double>{1, 2}, d));
}

TEST_CASE("idle project compounds the initial capital")
{
  Project p = chain({}, 90, {30, 60, 90});
  p.finance.r_excess = 0.0125;
  Schedule s;
  s.items = {{0, 1, 1}, {0, 1, 1}};
  FinancingDecisions d{0, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  const Ledger l = evaluate_ledger(s, d, p);
  for (int y = 0; y < 3; ++y) {
    CHECK(l.periods[y].cf == doctest::Approx(1e5 * std::pow(1.0125, 30 * y)).epsilon(1e-12));
  }

  const Project one = chain({}, 30, {30});
  const Ledger single = evaluate_ledger(s, FinancingDecisions{0, {0}, {0}, {0}}, one);
  REQUIRE(single.periods.size() == 1);
  CHECK(single.periods[0].cf == 1e5);
}

TEST_CASE("dues and costs follow the schedule")
{
  // A1: 2 days, 1 crew (10/day) and 1 material (5/day); A2: 3 days, 2 crew.
  const Project p = chain({{crisp_mode(2, 700, 1, 1)}, {crisp_mode(3, 900, 2, 0)}}, 8, {4, 8});
  Schedule s;
  s.items = {{0, 1, 1}, {0, 1, 3}, {0, 3, 6}, {0, 6, 6}};
  CHECK(check_schedule(s, p, make_crisp_timing(p)).empty());
  CHECK(period_dues(s, p) == std::vector<double>{700, 900});
  const auto daily = daily_costs(s, make_crisp_timing(p), kChainL);
  CHECK(daily[1] == 15);
  CHECK(daily[2] == 15);
  CHECK(daily[3] == 20);
  CHECK(daily[5] == 20);
  CHECK(daily[6] == 0);
  CHECK(period_costs(daily, p.periods) == std::vector<double>{70, 20});

  Schedule bad = s;
  bad.items[2].start = 2;
  CHECK_FALSE(check_schedule(bad, p, make_crisp_timing(p)).empty());
}

TEST_CASE("interest-free conservation")
{
  const Project p = chain({{crisp_mode(2, 700, 1, 1)}, {crisp_mode(3, 900, 2, 0)}}, 8, {4, 8});
  Schedule s;
  s.items = {{0, 1, 1}, {0, 1, 3}, {0, 3, 6}, {0, 6, 6}};
  const FinancingResult r = optimize_financing(s, p);
  CHECK(r.objective == doctest::Approx(1e5 + 1600 - 90));
  CHECK(r.ledger.final_cash() == doctest::Approx(r.objective).epsilon(1e-12));
  CHECK(r.decisions.stl == std::vector<double>{0, 0});
  CHECK(r.decisions.ltl == 0);
}

TEST_CASE("the floor forces the smallest short-term loan")
{
  Project p = chain({{crisp_mode(2, 0, 1, 1)}}, 8, {4, 8});
  p.finance.initial_capital = 20;
  p.finance.max_short_loan = 100;
  Schedule s;
  s.items = {{0, 1, 1}, {0, 1, 3}, {0, 3, 3}};
  const FinancingResult r = optimize_financing(s, p);
  CHECK(r.decisions.stl[0] == doctest::Approx(10));
  CHECK(r.ledger.periods[0].cf == doctest::Approx(0).scale(1));

  p.finance.max_short_loan = 5;
  try {
    optimize_financing(s, p);
    FAIL("expected FinancingInfeasible");
  } catch (const FinancingInfeasible& e) {
    CHECK(e.period() == 1);
  }
}

TEST_CASE("full delay dominates when delay interest beats excess interest")
{
  const Project p = parse_instance(read_file(CASHSCHED_DATA_DIR "/toy.json")).project;
  REQUIRE(p.finance.r_delay > p.finance.r_excess);
  RunOptions o;
  o.alpha = 0.5;
  o.method = Method::single_makespan;
  const RunResult run = run_solve(p, o);
  REQUIRE(run.has_solution());
  const FinancingResult r = optimize_financing(run.schedule, p, run.timing);
  const int Y = p.periods.count();
  const FinancingInputs in = financing_inputs(run.schedule, p, run.timing);
  double shifted = 0;
  for (int y = 0; y + 1 < Y; ++y) {
    CHECK(r.decisions.pa[y] == doctest::Approx(0).scale(1));
    shifted += in.due[y];
  }
  REQUIRE(shifted > 0);
  // Moving any due from delay to immediate payment lowers the final cash.
  for (int y = 0; y + 1 < Y; ++y) {
    if (in.due[y] <= 0) continue;
    FinancingDecisions d = r.decisions;
    d.pa[y] += in.due[y] / 2;
    d.dp[y] -= in.due[y] / 2;
    const Ledger l = evaluate_ledger(run.schedule, d, p, run.timing);
    CHECK(l.final_cash() < r.objective);
  }
  const Ledger replay = evaluate_ledger(run.schedule, r.decisions, p, run.timing);
  CHECK(replay.final_cash() == doctest::Approx(r.objective).epsilon(1e-9));
}

TEST_CASE("final cash rises with every rate")
{
  const FinancingDecisions d = ledger_decisions();
  double FinanceParams::*rates[] = {&FinanceParams::r_excess, &FinanceParams::r_delay, &FinanceParams::r_long,
                                    &FinanceParams::r_short};
  for (int k = 0; k < 4; ++k) {
    double prev = -1;
    for (int step = 0; step <= 10; ++step) {
      FinanceParams f = ledger_finance();
      f.max_long_loan = 500'000;
      f.*rates[k] = 0.01 * step;
      FinancingDecisions dd = d;
      dd.ltl = 50'000;
      const double cash = evaluate_ledger(f, kTbu, kDue, dd).final_cash();
      CAPTURE(k);
      CAPTURE(step);
      if (k < 2) {
        CHECK(cash > prev);
      } else {
        CHECK(cash >= prev);
      }
      prev = cash;
    }
  }
}
