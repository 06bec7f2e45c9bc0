/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include <doctest.h>

#include <set>

#include "cashsched/builder.hpp"
#include "cashsched/oracle.hpp"
#include "cashsched/toy.hpp"
#include "fixtures.hpp"

using namespace cashsched;
using namespace fixtures;

TEST_CASE("serial pair start tuples")
{
  // One period per day so every completion day is kept.
  const Project p = chain({{crisp_mode(2)}, {crisp_mode(3)}}, 7, {1, 2, 3, 4, 5, 6, 7});
  std::set<std::pair<int, int>> starts;
  const long n = for_each_schedule(p, make_crisp_timing(p), [&](const Schedule& s) {
    starts.insert({s.items[1].start, s.items[2].start});
  });
  CHECK(n == 3);
  CHECK(starts == std::set<std::pair<int, int>>{{1, 3}, {1, 4}, {2, 4}});
}

TEST_CASE("empty project keeps the initial capital")
{
  Project p = chain({}, 4, {2, 4});
  const TimingTable tt = make_crisp_timing(p);
  const OracleResult r = enumerate_exhaustive(p, tt, ScalarObjective::single(1));
  REQUIRE(r.status == SolveStatus::optimal);
  CHECK(r.objective == 1e5);
  CHECK(r.leaves == 1);
}

TEST_CASE("a tight daily cap serializes parallel work")
{
  Project p;
  p.name = "parallel";
  p.horizon = 10;
  p.periods = PeriodGrid({10});
  p.pricing.renewable = {10.0};
  p.pricing.nonrenewable = {0.0};
  p.pricing.daily_cap = 15;
  p.finance.initial_capital = 1e5;
  p.activities = {dummy("S", {}), activity("A", {"S"}, {crisp_mode(3, 0, 1)}),
                  activity("B", {"S"}, {crisp_mode(2, 0, 1)}), dummy("E", {"A", "B"})};
  const TimingTable tt = make_crisp_timing(p);
  const OracleResult r = enumerate_exhaustive(p, tt, ScalarObjective::single(0));
  REQUIRE(r.status == SolveStatus::optimal);
  CHECK(r.objective == 6);
  const auto& a = r.schedule.items[1];
  const auto& b = r.schedule.items[2];
  CHECK((a.completion <= b.start || b.completion <= a.start));

  p.pricing.daily_cap = 20;
  CHECK(enumerate_exhaustive(p, tt, ScalarObjective::single(0)).objective == 4);
}

TEST_CASE("leaf cap refuses instead of truncating")
{
  const Project p = random_toy(9);
  OracleOptions opt;
  opt.max_leaves = 2;
  CHECK_THROWS_AS(enumerate_exhaustive(p, make_timing(p, 0.5), ScalarObjective::single(0), opt), OracleRefusal);
}

TEST_CASE("single objectives match branch and bound")
{
  for (std::uint64_t seed : {10u, 11u, 12u, 13u}) {
    const Project p = random_toy(seed);
    const TimingTable tt = make_timing(p, 0.5);
    BuildOptions o;
    o.form = ModelForm::compact;
    const MilpModel m = build_model(p, tt, o);
    const ScheduleSpace sp = ScheduleSpace::enumerate(p, tt);
    CHECK(sp.leaves >= static_cast<long>(sp.candidates.size()));
    for (int k = 0; k < 3; ++k) {
      CAPTURE(seed);
      CAPTURE(k);
      const MilpSolution s = solve_milp(m, {}, k);
      const OracleResult r = optimize_over(sp, p, tt, ScalarObjective::single(k));
      REQUIRE(s.status == r.status);
      if (s.status != SolveStatus::optimal) continue;
      CHECK(s.objective == doctest::Approx(r.objective).epsilon(1e-6));
      CHECK(check_schedule(r.schedule, p, tt).empty());
      REQUIRE(r.objective_values.size() == 3);
      CHECK(r.objective_values[k] == r.objective);
    }
  }
}
