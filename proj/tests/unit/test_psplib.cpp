/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cashsched/instance_io.hpp"
#include "cashsched/psplib.hpp"

using namespace cashsched;

namespace {

std::string j30() { return read_file(CASHSCHED_TEST_DATA_DIR "/j30_synth.mm"); }
std::string mm50() { return read_file(CASHSCHED_TEST_DATA_DIR "/mm50_synth.mm"); }

std::string parse_path(const std::string& text, BenchmarkDialect d)
{
  try {
    parse_psplib_mm(text, d);
  } catch (const ParseError& e) {
    return e.path();
  }
  return "no error";
}

}  // namespace

TEST_CASE("psplib multi-mode file")
{
  const BenchmarkInstance b = parse_psplib_mm(j30());
  CHECK(b.dialect == BenchmarkDialect::psplib_mm);
  CHECK(b.declared_jobs == 32);
  REQUIRE(b.jobs.size() == 32);
  CHECK(b.horizon == 257);
  CHECK(b.renewable_capacity == std::vector<int>{14, 14});
  CHECK(b.nonrenewable_capacity == std::vector<int>{38, 31});
  const BenchmarkJob& j2 = b.jobs[1];
  CHECK(j2.number == 2);
  CHECK(j2.successors == std::vector<int>{17, 25});
  REQUIRE(j2.modes.size() == 3);
  CHECK(j2.modes[2].duration == 10);
  CHECK(j2.modes[2].renewable == std::vector<int>{10, 0});
  CHECK(j2.modes[2].nonrenewable == std::vector<int>{0, 7});

  const HeaderEcho h = header_echo(b);
  CHECK(h.declared_jobs == 32);
  CHECK(h.precedence_jobs == 32);
  CHECK(h.request_jobs == 32);
  CHECK(h.precedence_modes == h.request_modes);
  CHECK(h.request_renewable == 2);
  CHECK(h.request_nonrenewable == 2);
  CHECK(h.arcs == b.arc_count());
}

TEST_CASE("mmlib file without optional header blocks")
{
  const BenchmarkInstance b = parse_psplib_mm(mm50(), BenchmarkDialect::mmlib);
  CHECK(header_echo(b).declared_jobs == 52);
  REQUIRE(b.jobs.size() == 52);
  int longest = 0;
  for (const auto& j : b.jobs) {
    int d = 0;
    for (const auto& m : j.modes) d = std::max(d, m.duration);
    longest += d;
  }
  CHECK(b.horizon == longest);
  CHECK(parse_path(mm50(), BenchmarkDialect::psplib_mm) != "no error");
}

TEST_CASE("malformed files name their section")
{
  const std::string text = j30();
  const std::string truncated = text.substr(0, text.rfind("\n", text.find(" 32      1", text.find("REQUESTS"))));
  CHECK(parse_path(truncated, BenchmarkDialect::psplib_mm) == "REQUESTS/DURATIONS");
  try {
    parse_psplib_mm(truncated);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).rfind("REQUESTS/DURATIONS", 0) == 0);
  }

  std::string cyclic = text;
  const std::string row = "   4        3          1     14";
  const auto at = cyclic.find(row);
  REQUIRE(at != std::string::npos);
  cyclic.replace(at, row.size(), "   4        3          1      2");
  const std::string two = "   2        3          2     17  25";
  cyclic.replace(cyclic.find(two), two.size(), "   2        3          2     17   4");
  CHECK(parse_path(cyclic, BenchmarkDialect::psplib_mm) == "PRECEDENCE RELATIONS");

  std::string bad_number = text;
  bad_number.replace(bad_number.find("horizon                       :  257"), 36,
                     "horizon                       :  x57");
  CHECK(parse_path(bad_number, BenchmarkDialect::psplib_mm) == "header");
}

TEST_CASE("finance synthesis is deterministic and valid")
{
  const BenchmarkInstance b = parse_psplib_mm(j30());
  const InstanceDocument a = synthesize_finance(b, 42);
  const InstanceDocument c = synthesize_finance(b, 42);
  CHECK(a.diagnostics.empty());
  CHECK(write_instance(a.project, a.notes) == write_instance(c.project, c.notes));
  CHECK_FALSE(synthesize_finance(b, 43).project == a.project);
  CHECK(a.project.activities.front().is_dummy);
  CHECK(a.project.activities.back().is_dummy);
  CHECK(a.project.activities[1].id == "2");

  const InstanceDocument m = synthesize_finance(parse_psplib_mm(mm50(), BenchmarkDialect::mmlib), 7);
  CHECK(m.diagnostics.empty());
  CHECK(m.project.activities.size() == 52);
}

TEST_CASE("zero spreads give a crisp instance priced with the markup")
{
  const BenchmarkInstance b = parse_psplib_mm(j30());
  const Project p = synthesize_finance(b, 1).project;
  for (std::size_t i = 0; i < p.activities.size(); ++i) {
    const Activity& a = p.activities[i];
    for (std::size_t k = 0; k < a.modes.size(); ++k) {
      const Mode& m = a.modes[k];
      const BenchmarkMode& src = b.jobs[i].modes[k];
      CHECK(m.duration.is_crisp());
      double cost = 0;
      for (std::size_t r = 0; r < m.renewable.size(); ++r) {
        CHECK(m.renewable[r].is_crisp());
        cost += p.pricing.renewable[r] * src.renewable[r] * src.duration;
      }
      for (std::size_t r = 0; r < m.nonrenewable.size(); ++r) {
        CHECK(m.nonrenewable[r].is_crisp());
        cost += p.pricing.nonrenewable[r] * src.nonrenewable[r];
      }
      CAPTURE(i);
      CAPTURE(k);
      CHECK(std::abs(m.payment - 1.2 * cost) <= 0.005 + 1e-9);
    }
  }
}

TEST_CASE("fuzzy spreads and configuration parsing")
{
  FinanceConfig cfg = parse_finance_config(R"({"markup": 0.5, "duration_spread_lower": 0.1, "duration_spread_upper": 0.2})");
  CHECK(cfg.markup == 0.5);
  CHECK(cfg.r_delay == 0.1);
  const Project p = synthesize_finance(parse_psplib_mm(j30()), 1, cfg).project;
  CHECK_FALSE(p.activities[1].modes[0].duration.is_crisp());
  CHECK_THROWS_AS(parse_finance_config(R"({"markup": 0.5, "tax": 1})"), ParseError);
  CHECK_THROWS_AS(parse_finance_config(R"({"markup": "high"})"), ParseError);
}
