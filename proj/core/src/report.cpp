/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "cashsched/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cashsched/instance_io.hpp"

namespace cashsched {

namespace {

struct Row {
  const char* label;
  double LedgerPeriod::*field;
};

constexpr std::array<Row, 12> kRows{{
    {"cash flow", &LedgerPeriod::cf},
    {"total cost of using resources", &LedgerPeriod::tbu},
    {"short-term loan", &LedgerPeriod::stl},
    {"payments", &LedgerPeriod::pa},
    {"delayed payments", &LedgerPeriod::dp},
    {"capital", &LedgerPeriod::capital},
    {"long-term loan", &LedgerPeriod::long_loan},
    {"excess cash interest", &LedgerPeriod::excess_credit},
    {"delayed payment interest", &LedgerPeriod::delay_credit},
    {"long-term repayment", &LedgerPeriod::long_debit},
    {"short-term repayment", &LedgerPeriod::short_debit},
    {"dues", &LedgerPeriod::due},
}};

std::string number(double v)
{
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string xml_escape(std::string_view s)
{
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<std::string> split_csv(std::string_view line)
{
  std::vector<std::string> out(1);
  for (char c : line) {
    if (c == ',') out.emplace_back();
    else out.back() += c;
  }
  return out;
}

}  // namespace

std::string format_money(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

void write_ledger_csv(const Ledger& l, std::ostream& out)
{
  out << "variable";
  for (std::size_t y = 0; y < l.periods.size(); ++y) out << ",Period " << y + 1;
  out << '\n';
  if (!l.periods.empty()) {
    for (const auto& row : kRows) {
      out << row.label;
      for (const auto& per : l.periods) out << ',' << format_money(per.*row.field);
      out << '\n';
    }
  }
  out.flush();
  if (!out) throw std::runtime_error("failed writing ledger CSV");
}

Ledger parse_ledger_csv(std::string_view text)
{
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  if (lines.empty()) throw ParseError("ledger CSV: empty document", 1, 1);
  const auto header = split_csv(lines[0]);
  if (header[0] != "variable") throw ParseError("ledger CSV: line 1: expected \"variable\" header", 1, 1);
  for (std::size_t y = 1; y < header.size(); ++y) {
    if (header[y] != "Period " + std::to_string(y)) {
      throw ParseError("ledger CSV: line 1: expected \"Period " + std::to_string(y) + "\"", 1, 0);
    }
  }
  Ledger l;
  l.periods.resize(header.size() - 1);
  std::vector<bool> seen(kRows.size(), false);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const int line = static_cast<int>(i) + 1;
    const auto cells = split_csv(lines[i]);
    auto row = std::find_if(kRows.begin(), kRows.end(), [&](const Row& r) { return cells[0] == r.label; });
    if (row == kRows.end()) throw ParseError("ledger CSV: line " + std::to_string(line) + ": unknown row \"" + cells[0] + "\"", line, 1);
    if (cells.size() != header.size()) {
      throw ParseError("ledger CSV: line " + std::to_string(line) + ": expected " + std::to_string(header.size()) + " cells", line, 0);
    }
    seen[row - kRows.begin()] = true;
    for (std::size_t y = 1; y < cells.size(); ++y) {
      double v = 0.0;
      const auto r = std::from_chars(cells[y].data(), cells[y].data() + cells[y].size(), v);
      if (r.ec != std::errc{} || r.ptr != cells[y].data() + cells[y].size()) {
        throw ParseError("ledger CSV: line " + std::to_string(line) + ": bad number \"" + cells[y] + "\"", line, 0);
      }
      l.periods[y - 1].*(row->field) = v;
    }
  }
  if (!l.periods.empty() && std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw ParseError("ledger CSV: missing rows");
  }
  return l;
}

void render_gantt_svg(const Schedule& s, const Project& p, std::ostream& out, const GanttStyle& style)
{
  const int days = std::max({p.horizon, s.makespan(), p.periods.count() ? p.periods.boundaries().back() : 0, 1});
  const double top = 30.0;
  const double left = style.label_width;
  const double width = left + days * style.day_width + 20.0;
  const double height = top + static_cast<double>(s.items.size()) * style.row_height + 20.0;
  auto x = [&](int day) { return number(left + day * style.day_width); };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << number(width) << "\" height=\""
      << number(height) << "\" viewBox=\"0 0 " << number(width) << ' ' << number(height) << "\">\n"
      << "<title>" << xml_escape(p.name.empty() ? "schedule" : p.name) << " (makespan " << s.makespan()
      << ")</title>\n"
      << "<g font-family=\"sans-serif\" font-size=\"10\">\n";

  out << "<line x1=\"" << x(0) << "\" y1=\"" << number(top) << "\" x2=\"" << x(days) << "\" y2=\"" << number(top)
      << "\" stroke=\"#000\"/>\n"
      << "<text x=\"" << x(0) << "\" y=\"" << number(top - 6) << "\">0</text>\n";
  for (int y = 0; y < p.periods.count(); ++y) {
    const int day = p.periods.last_day(y);
    out << "<line class=\"period\" x1=\"" << x(day) << "\" y1=\"" << number(top) << "\" x2=\"" << x(day)
        << "\" y2=\"" << number(height - 10) << "\" stroke=\"#888\" stroke-dasharray=\"4 2\"/>\n"
        << "<text x=\"" << x(day) << "\" y=\"" << number(top - 6) << "\" text-anchor=\"middle\">" << day
        << "</text>\n";
  }
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    const auto& a = s.items[i];
    const auto& act = p.activities[i];
    const double y = top + static_cast<double>(i) * style.row_height;
    const double mid = y + style.row_height / 2.0;
    out << "<text x=\"4\" y=\"" << number(mid + 3) << "\">" << xml_escape(act.name.empty() ? act.id : act.name)
        << "</text>\n";
    if (act.is_dummy) {
      out << "<line class=\"dummy\" x1=\"" << x(a.start) << "\" y1=\"" << number(y + 2) << "\" x2=\"" << x(a.start)
          << "\" y2=\"" << number(y + style.row_height - 2) << "\" stroke=\"#000\" stroke-width=\"2\"/>\n";
      continue;
    }
    out << "<rect class=\"bar\" x=\"" << x(a.start) << "\" y=\"" << number(y + 3) << "\" width=\""
        << number((a.completion - a.start) * style.day_width) << "\" height=\"" << number(style.row_height - 6)
        << "\" fill=\"#4a7ab0\"/>\n"
        << "<text x=\"" << number(left + a.completion * style.day_width + 3) << "\" y=\"" << number(mid + 3)
        << "\">m" << a.mode + 1 << " [" << a.start << ", " << a.completion << "]</text>\n";
  }
  out << "</g>\n</svg>\n";
  out.flush();
  if (!out) throw std::runtime_error("failed writing Gantt SVG");
}

}  // namespace cashsched
