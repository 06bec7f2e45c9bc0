/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include <doctest.h>

#include <cmath>
#include <regex>
#include <sstream>

#include "cashsched/instance_io.hpp"
#include "cashsched/report.hpp"
#include "fixtures.hpp"

using namespace cashsched;
using namespace fixtures;

namespace {

Ledger case_ledger()
{
  const LedgerReplay r = parse_replay(read_file(CASHSCHED_DATA_DIR "/case22_ledger.json"));
  return evaluate_ledger(r.finance, r.tbu, r.due, r.decisions);
}

std::vector<std::string> lines(const std::string& s)
{
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

int count(const std::string& s, const std::string& what)
{
  int n = 0;
  for (auto at = s.find(what); at != std::string::npos; at = s.find(what, at + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("money formatting")
{
  CHECK(format_money(890000) == "890000.000");
  CHECK(format_money(1474232.3994) == "1474232.399");
  CHECK(format_money(-0.0001) == "0.000");
  CHECK(format_money(-12.5) == "-12.500");
}

TEST_CASE("published ledger as CSV")
{
  std::ostringstream out;
  write_ledger_csv(case_ledger(), out);
  const auto rows = lines(out.str());
  REQUIRE(rows.size() == 13);
  CHECK(rows[0] == "variable,Period 1,Period 2,Period 3,Period 4");
  CHECK(rows[1] == "cash flow,890000.000,1474232.399,2809530.777,4914108.476");
  CHECK(rows[2] == "total cost of using resources,210000.000,253350.000,401100.000,327100.000");
  CHECK(rows[3] == "short-term loan,100000.000,100000.000,0.000,100000.000");
}

TEST_CASE("empty and single-period ledgers")
{
  std::ostringstream empty;
  write_ledger_csv(Ledger{}, empty);
  CHECK(empty.str() == "variable\n");

  const FinanceParams f{500, 0, 0, 0, 0, 0, 0, 0, 30};
  const Ledger one = evaluate_ledger(f, std::vector<double>{100}, std::vector<double>{40},
                                     FinancingDecisions{0, {0}, {40}, {0}});
  std::ostringstream out;
  write_ledger_csv(one, out);
  for (const auto& row : lines(out.str())) CHECK(count(row, ",") == 1);
  CHECK(lines(out.str())[1] == "cash flow,440.000");
}

TEST_CASE("CSV round trip")
{
  const Ledger l = case_ledger();
  std::ostringstream out;
  write_ledger_csv(l, out);
  const Ledger back = parse_ledger_csv(out.str());
  REQUIRE(back.periods.size() == l.periods.size());
  for (std::size_t y = 0; y < l.periods.size(); ++y) {
    CHECK(std::abs(back.periods[y].cf - l.periods[y].cf) <= 5e-4);
    CHECK(std::abs(back.periods[y].excess_credit - l.periods[y].excess_credit) <= 5e-4);
    CHECK(std::abs(back.periods[y].short_debit - l.periods[y].short_debit) <= 5e-4);
    CHECK(back.periods[y].due == l.periods[y].due);
  }
  CHECK_THROWS(parse_ledger_csv("variable,Period 1\ncash flow,abc\n"));
}

TEST_CASE("Gantt geometry")
{
  Project p = chain({{crisp_mode(3)}}, 120, {30, 60, 90, 120});
  Schedule s;
  s.items = {{0, 5, 5}, {0, 5, 8}, {0, 8, 8}};
  const GanttStyle st;
  std::ostringstream out;
  render_gantt_svg(s, p, out, st);
  const std::string svg = out.str();
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("version=\"1.1\"") != std::string::npos);
  CHECK(count(svg, "class=\"period\"") == 4);
  CHECK(count(svg, "class=\"bar\"") == 1);
  CHECK(count(svg, "class=\"dummy\"") == 2);

  auto x = [&](int day) { return std::to_string(static_cast<int>(st.label_width + day * st.day_width)); };
  const std::regex bar("<rect class=\"bar\" x=\"([0-9.]+)\" y=\"[0-9.]+\" width=\"([0-9.]+)\"");
  std::smatch m;
  REQUIRE(std::regex_search(svg, m, bar));
  CHECK(m[1].str() == x(5));
  CHECK(std::stoi(m[1].str()) + std::stoi(m[2].str()) == std::stoi(x(8)));
  CHECK(svg.find("m1 [5, 8]") != std::string::npos);
  CHECK(svg.find("<line class=\"dummy\" x1=\"" + x(5) + "\" y1=\"32\" x2=\"" + x(5) + "\"") != std::string::npos);
  CHECK(svg.find("<line class=\"period\" x1=\"" + x(30) + "\"") != std::string::npos);

  std::ostringstream again;
  render_gantt_svg(s, p, again, st);
  CHECK(again.str() == svg);
}
