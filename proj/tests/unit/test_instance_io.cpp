/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include <doctest.h>

#include <filesystem>

#include "cashsched/instance_io.hpp"
#include "cashsched/toy.hpp"
#include "fixtures.hpp"

using namespace cashsched;
using namespace fixtures;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"({
  "schema": 1,
  "name": "mini",
  "horizon": 6,
  "periods": [3, 6],
  "resources": {
    "renewable": [{"name": "crew", "price": 10}],
    "nonrenewable": [{"name": "steel", "price": 5}],
    "daily_cost_cap": 100
  },
  "finance": {
    "initial_capital": 1000, "max_long_loan": 0, "max_short_loan": 0, "min_cash": 0,
    "r_excess": 0, "r_delay": 0, "r_long": 0, "r_short": 0, "compounding_days": 30
  },
  "activities": [
    {"id": "S", "dummy": true, "predecessors": []},
    {"id": "A", "predecessors": ["S"], "modes": [
      {"duration": [1, 2, 4], "payment": 50, "renewable": [1], "nonrenewable": [{"lower": [1, 2, 3], "upper": [0, 2, 4]}]}
    ]},
    {"id": "E", "dummy": true, "predecessors": ["A"]}
  ]
})";

std::string replace(std::string s, const std::string& from, const std::string& to)
{
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("number, triangle and pair forms")
{
  const InstanceDocument doc = parse_instance(kMinimal);
  CHECK(doc.diagnostics.empty());
  const Project& p = doc.project;
  CHECK(p.name == "mini");
  CHECK(p.periods.count() == 2);
  REQUIRE(p.activities.size() == 3);
  CHECK(p.activities[0].modes.size() == 1);
  CHECK(p.activities[0].modes[0].duration == NivtfNumber::crisp(0));
  const Mode& m = p.activities[1].modes[0];
  CHECK(m.duration == make_nivtf({1, 2, 4}, {1, 2, 4}));
  CHECK(m.renewable[0] == NivtfNumber::crisp(1));
  CHECK(m.nonrenewable[0] == make_nivtf({1, 2, 3}, {0, 2, 4}));
  CHECK(p.pricing.renewable == std::vector<double>{10});
}

TEST_CASE("round trip is bit exact")
{
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Project p = random_toy(seed);
    const std::string text = write_instance(p, {{"/name", "generated"}});
    const InstanceDocument back = parse_instance(text);
    CHECK(back.project == p);
    CHECK(back.notes.at("/name") == "generated");
    CHECK(write_instance(back.project, back.notes) == text);
  }
  const InstanceDocument cs = parse_instance(read_file(CASHSCHED_DATA_DIR "/case22.json"));
  CHECK(cs.diagnostics.empty());
  CHECK(parse_instance(write_instance(cs.project, cs.notes)).project == cs.project);
}

TEST_CASE("strict structure errors carry a pointer")
{
  auto path_of = [](const std::string& text) {
    try {
      parse_instance(text);
    } catch (const ParseError& e) {
      return e.path();
    }
    return std::string("no error");
  };
  CHECK(path_of(replace(kMinimal, "\"name\": \"mini\"", "\"name\": \"mini\", \"colour\": 1")) == "/");
  CHECK(path_of(replace(kMinimal, "\"schema\": 1", "\"schema\": 2")) == "/schema");
  CHECK(path_of(replace(kMinimal, "\"horizon\": 6", "\"horizon\": \"six\"")) == "/horizon");
  CHECK(path_of(replace(kMinimal, "\"payment\": 50", "\"payment\": [50]")) == "/activities/1/modes/0/payment");
  CHECK(path_of(replace(kMinimal, "[1, 2, 4]", "[4, 2, 1]")) == "/activities/1/modes/0/duration");
  CHECK(path_of(replace(kMinimal, "\"horizon\": 6,", "")) == "/");
}

TEST_CASE("syntax errors report line and column")
{
  try {
    parse_instance("{\n  \"schema\": 1,\n  \"name\" \"x\"\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    // The column is the last character the lexer consumed: the closing quote of "x".
    CHECK(e.line() == 3);
    CHECK(e.column() == 12);
  }
}

TEST_CASE("semantic problems become diagnostics")
{
  const InstanceDocument doc = parse_instance(replace(kMinimal, "\"predecessors\": [\"A\"]", "\"predecessors\": [\"Q\"]"));
  CHECK_FALSE(doc.diagnostics.empty());
}

TEST_CASE("schedules and decisions round trip")
{
  const Project p = parse_instance(kMinimal).project;
  Schedule s;
  s.items = {{0, 1, 1}, {0, 1, 3}, {0, 3, 3}};
  const std::string text = write_schedule(s, p);
  CHECK(parse_schedule(text, p) == s);
  CHECK(text.find("\"mode\": 1") != std::string::npos);
  CHECK(text.find("\"makespan\": 3") != std::string::npos);
  CHECK_THROWS_AS(parse_schedule(R"({"schema": 1, "activities": []})", p), ParseError);

  const FinancingDecisions d{12.5, {1, 2}, {0, 50}, {0, 0}};
  CHECK(parse_decisions(write_decisions(d)) == d);
  CHECK_THROWS_AS(parse_decisions(R"({"schema": 1, "ltl": 0, "stl": [1], "pa": [], "dp": []})"), ParseError);
}

TEST_CASE("atomic writes leave no temporary file")
{
  const fs::path dir = fs::temp_directory_path() / "cashsched_io_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string target = (dir / "out.json").string();
  write_file_atomic(target, "first\n");
  write_file_atomic(target, "second\n");
  CHECK(read_file(target) == "second\n");
  CHECK_FALSE(fs::exists(target + ".tmp"));
  CHECK_THROWS(write_file_atomic((dir / "missing" / "x.json").string(), "x"));
  CHECK_THROWS(read_file((dir / "nope.json").string()));
  int entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
  CHECK(entries == 1);
  fs::remove_all(dir);
}
