/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include <doctest.h>

#include <algorithm>

#include "cashsched/instance_io.hpp"
#include "cashsched/project.hpp"
#include "cashsched/timing.hpp"
#include "fixtures.hpp"

using namespace cashsched;
using namespace fixtures;

namespace {

bool has_rule(const std::vector<Diagnostic>& d, const std::string& rule)
{
  return std::any_of(d.begin(), d.end(), [&](const Diagnostic& x) { return x.rule == rule; });
}

}  // namespace

TEST_CASE("case-study instance validates")
{
  const auto doc = parse_instance(read_file(CASHSCHED_DATA_DIR "/case22.json"));
  CHECK(doc.diagnostics.empty());
  CHECK(doc.project.activities.size() == 24);
  CHECK(doc.project.periods.boundaries() == std::vector<int>{30, 60, 90, 120});
}

TEST_CASE("precedence cycle is reported")
{
  Project p = chain({{crisp_mode(2)}, {crisp_mode(3)}}, 10, {10});
  p.activities[1].predecessors.push_back("A2");
  const auto d = validate_project(p);
  CHECK(has_rule(d, "cycle"));
}

TEST_CASE("period grid must end at the horizon")
{
  Project p = chain({{crisp_mode(2)}}, 10, {5, 9});
  const auto d = validate_project(p);
  REQUIRE(d.size() == 1);
  CHECK(d[0].rule == "period coverage");
}

TEST_CASE("structural diagnostics")
{
  Project p = chain({{crisp_mode(2)}, {crisp_mode(3)}}, 10, {10});
  CHECK(validate_project(p).empty());

  Project dup = p;
  dup.activities[2].id = "A1";
  CHECK(has_rule(validate_project(dup), "identifier"));

  Project sinks = p;
  sinks.activities.push_back(activity("B", {"S"}, {crisp_mode(1)}));
  CHECK(has_rule(validate_project(sinks), "unique sink"));

  Project dummy_mode = p;
  dummy_mode.activities[0].modes[0].payment = 5;
  CHECK(has_rule(validate_project(dummy_mode), "dummy"));

  Project neg = p;
  neg.finance.r_short = -0.1;
  CHECK(has_rule(validate_project(neg), "non-negative rate"));

  Project comp = p;
  comp.finance.compounding_days = 0;
  CHECK(has_rule(validate_project(comp), "compounding days"));
}

TEST_CASE("uniform period grid and period_of")
{
  CHECK(PeriodGrid::uniform(120, 30).boundaries() == std::vector<int>{30, 60, 90, 120});
  CHECK(PeriodGrid::uniform(100, 30).boundaries() == std::vector<int>{30, 60, 90, 100});
  const PeriodGrid g({30, 60, 90, 120});
  for (int y = 0; y < g.count(); ++y) {
    CHECK(g.period_of(g.first_day(y)) == y);
    CHECK(g.period_of(g.last_day(y)) == y);
  }
  CHECK(g.period_of(30) == 0);
  CHECK(g.period_of(31) == 1);
  CHECK_FALSE(g.period_of(0).has_value());
  CHECK_FALSE(g.period_of(121).has_value());
  int covered = 0;
  for (int t = 1; t <= 120; ++t) covered += g.period_of(t).has_value();
  CHECK(covered == 120);
}

TEST_CASE("horizon bound")
{
  CHECK(horizon_bound(chain({{crisp_mode(2)}, {crisp_mode(3)}, {crisp_mode(4)}}, 20, {20}), 0.5) == 9);
  CHECK(horizon_bound(chain({{crisp_mode(5), crisp_mode(2)}}, 20, {20}), 0.5) == 5);
  const Mode f = mode(make_nivtf({7, 10, 12}, {7, 10, 12}));
  CHECK(horizon_bound(chain({{f}, {f}}, 40, {40}), 1.0) == 22);
}

TEST_CASE("horizon bound stays within the expected-interval envelope")
{
  const Mode f = mode(make_nivtf({7, 10, 12}, {6, 10, 13}));
  const Mode g = mode(make_nivtf({2, 4, 5}, {1, 4, 7}));
  const Project p = chain({{f, g}, {g}}, 60, {60});
  for (double a : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const int h = horizon_bound(p, a);
    CHECK(h >= 8 + 3);    // floor of max E1 over modes: 8.5 and 3
    CHECK(h <= 12 + 7);   // ceil of max E2 over modes, using the upper triangles: 11.5 and 5.5
  }
}

TEST_CASE("project graph")
{
  const Project p = chain({{crisp_mode(2)}, {crisp_mode(3)}}, 10, {10});
  const ProjectGraph g = build_graph(p);
  CHECK(g.source == 0);
  CHECK(g.sink == 3);
  CHECK(g.topological_order == std::vector<int>{0, 1, 2, 3});
  CHECK(g.successors[1] == std::vector<int>{2});
}
